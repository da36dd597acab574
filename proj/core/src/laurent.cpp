#include "xxz/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace xxz {

namespace {
constexpr double kDropTol = 1e-300;
}

LaurentPoly LaurentPoly::constant(Complex c) { return monomial(0, c); }

LaurentPoly LaurentPoly::monomial(int degree, Complex coeff) {
    LaurentPoly p;
    if (std::abs(coeff) > kDropTol) p.coeffs_[degree] = coeff;
    return p;
}

LaurentPoly LaurentPoly::sinh_shifted(Complex a) {
    LaurentPoly p;
    p.coeffs_[1] = 0.5 * std::exp(a);
    p.coeffs_[-1] = -0.5 * std::exp(-a);
    return p;
}

LaurentPoly LaurentPoly::cosh_shifted(Complex a) {
    LaurentPoly p;
    p.coeffs_[1] = 0.5 * std::exp(a);
    p.coeffs_[-1] = 0.5 * std::exp(-a);
    return p;
}

LaurentPoly LaurentPoly::sinh_two_lambda() {
    LaurentPoly p;
    p.coeffs_[2] = 0.5;
    p.coeffs_[-2] = -0.5;
    return p;
}

LaurentPoly LaurentPoly::exponential(int n, Complex scale) { return monomial(n, scale); }

Complex LaurentPoly::coeff(int degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
}

void LaurentPoly::set_coeff(int degree, Complex value) {
    if (std::abs(value) > kDropTol)
        coeffs_[degree] = value;
    else
        coeffs_.erase(degree);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
    for (const auto& [d, c] : other.coeffs_) coeffs_[d] += c;
    prune();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
    for (const auto& [d, c] : other.coeffs_) coeffs_[d] -= c;
    prune();
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
    std::map<int, Complex> out;
    for (const auto& [da, ca] : coeffs_)
        for (const auto& [db, cb] : other.coeffs_) out[da + db] += ca * cb;
    coeffs_ = std::move(out);
    prune();
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex s) {
    if (std::abs(s) <= kDropTol) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [d, c] : coeffs_) c *= s;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p(*this);
    for (auto& [d, c] : p.coeffs_) c = -c;
    return p;
}

LaurentPoly LaurentPoly::derivative() const {
    LaurentPoly p;
    for (const auto& [d, c] : coeffs_)
        if (d != 0) p.coeffs_[d] = double(d) * c;
    return p;
}

Complex LaurentPoly::eval(Complex lambda) const {
    Complex out(0.0);
    for (const auto& [d, c] : coeffs_) out += c * std::exp(double(d) * lambda);
    return out;
}

std::pair<int, Complex> LaurentPoly::leading(Direction dir) const {
    if (coeffs_.empty())
        throw Error("leading(): zero polynomial has no asymptotic term");
    if (dir == Direction::plus_infinity) {
        auto it = coeffs_.rbegin();
        return {it->first, it->second};
    }
    auto it = coeffs_.begin();
    return {it->first, it->second};
}

LaurentPoly LaurentPoly::substituted(int flip, Complex scale) const {
    if (flip != 1 && flip != -1)
        throw Error("substituted(): flip must be +1 or -1");
    LaurentPoly p;
    for (const auto& [d, c] : coeffs_) p.coeffs_[flip * d] = c * std::pow(scale, d);
    p.prune();
    return p;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly p;
    for (const auto& [d, c] : coeffs_) p.coeffs_[d + k] = c;
    return p;
}

int LaurentPoly::min_degree() const {
    if (coeffs_.empty()) throw Error("min_degree(): zero polynomial");
    return coeffs_.begin()->first;
}

int LaurentPoly::max_degree() const {
    if (coeffs_.empty()) throw Error("max_degree(): zero polynomial");
    return coeffs_.rbegin()->first;
}

double LaurentPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [d, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

void LaurentPoly::prune(double rel_tol) {
    const double cut = rel_tol * max_abs_coeff();
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) <= cut)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

double coeff_distance(const LaurentPoly& a, const LaurentPoly& b) {
    double sup = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
    double dif = 0.0;
    for (const auto& [d, c] : a.coeffs()) dif = std::max(dif, std::abs(c - b.coeff(d)));
    for (const auto& [d, c] : b.coeffs()) dif = std::max(dif, std::abs(c - a.coeff(d)));
    return dif / sup;
}

// ---------------------------------------------------------------- Laurent2

Laurent2 Laurent2::lift(const LaurentPoly& p, int e1, int e2) {
    Laurent2 q;
    for (const auto& [d, c] : p.coeffs()) q.coeffs_[{d * e1, d * e2}] += c;
    q.prune();
    return q;
}

Laurent2& Laurent2::operator+=(const Laurent2& other) {
    for (const auto& [d, c] : other.coeffs_) coeffs_[d] += c;
    prune();
    return *this;
}

Laurent2& Laurent2::operator-=(const Laurent2& other) {
    for (const auto& [d, c] : other.coeffs_) coeffs_[d] -= c;
    prune();
    return *this;
}

Laurent2& Laurent2::operator*=(const Laurent2& other) {
    std::map<std::pair<int, int>, Complex> out;
    for (const auto& [da, ca] : coeffs_)
        for (const auto& [db, cb] : other.coeffs_)
            out[{da.first + db.first, da.second + db.second}] += ca * cb;
    coeffs_ = std::move(out);
    prune();
    return *this;
}

Laurent2& Laurent2::operator*=(Complex s) {
    for (auto& [d, c] : coeffs_) c *= s;
    return *this;
}

double Laurent2::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [d, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Complex Laurent2::eval(Complex lambda1, Complex lambda2) const {
    Complex out(0.0);
    for (const auto& [d, c] : coeffs_)
        out += c * std::exp(double(d.first) * lambda1 + double(d.second) * lambda2);
    return out;
}

void Laurent2::prune(double rel_tol) {
    const double cut = rel_tol * max_abs_coeff();
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) <= cut)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

double coeff_distance(const Laurent2& a, const Laurent2& b) {
    double sup = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
    double dif = 0.0;
    for (const auto& [d, c] : a.coeffs()) {
        auto it = b.coeffs().find(d);
        dif = std::max(dif, std::abs(c - (it == b.coeffs().end() ? Complex(0) : it->second)));
    }
    for (const auto& [d, c] : b.coeffs()) {
        auto it = a.coeffs().find(d);
        dif = std::max(dif, std::abs(c - (it == a.coeffs().end() ? Complex(0) : it->second)));
    }
    return dif / sup;
}

Laurent2Matrix l2m_mul(int n, const Laurent2Matrix& a, const Laurent2Matrix& b) {
    Laurent2Matrix out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Laurent2& aik = a[i * n + k];
            if (aik.coeffs().empty()) continue;
            for (int j = 0; j < n; ++j) out[i * n + j] += aik * b[k * n + j];
        }
    return out;
}

double l2m_distance(const Laurent2Matrix& a, const Laurent2Matrix& b) {
    if (a.size() != b.size()) throw DimensionError("l2m_distance: size mismatch");
    double sup = 1.0;
    for (const auto& e : a) sup = std::max(sup, e.max_abs_coeff());
    for (const auto& e : b) sup = std::max(sup, e.max_abs_coeff());
    double dif = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Laurent2 d = a[i] - b[i];
        dif = std::max(dif, d.max_abs_coeff());
    }
    return dif / sup;
}

} // namespace xxz
