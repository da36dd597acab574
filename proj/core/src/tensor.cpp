#include "xxz/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

namespace xxz {

namespace pauli {

Eigen::Matrix2cd id2() { return Eigen::Matrix2cd::Identity(); }

Eigen::Matrix2cd x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd y() {
    Eigen::Matrix2cd m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Eigen::Matrix2cd z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::Matrix2cd plus() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1;
    return m;
}

Eigen::Matrix2cd minus() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(1, 0) = 1;
    return m;
}

} // namespace pauli

Eigen::Matrix4cd permutation_4() {
    Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
    p(0, 0) = p(3, 3) = 1;
    p(1, 2) = p(2, 1) = 1;
    return p;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

int log2_dim(Eigen::Index d, const char* what) {
    int k = 0;
    while ((Eigen::Index(1) << k) < d) ++k;
    if ((Eigen::Index(1) << k) != d)
        throw DimensionError(std::string(what) + ": dimension is not a power of 2");
    return k;
}

} // namespace

CMat embed(const CMat& op, int first_site, int sites) {
    if (op.rows() != op.cols()) throw DimensionError("embed: operator must be square");
    const int k = log2_dim(op.rows(), "embed");
    if (first_site < 1 || first_site + k - 1 > sites)
        throw DimensionError("embed: site range [" + std::to_string(first_site) + ", " +
                             std::to_string(first_site + k - 1) + "] outside chain of length " +
                             std::to_string(sites));
    const Eigen::Index left = Eigen::Index(1) << (first_site - 1);
    const Eigen::Index right = Eigen::Index(1) << (sites - first_site - k + 1);
    CMat out = op;
    if (left > 1) out = kron(CMat::Identity(left, left), out);
    if (right > 1) out = kron(out, CMat::Identity(right, right));
    return out;
}

CMat q_commutator(const CMat& x, const CMat& y, Complex qfac) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols())
        throw DimensionError("q_commutator: operands must be square and equal-sized");
    if (std::abs(qfac) == 0.0) throw DegenerateParameterError("q_commutator: qfac must be nonzero");
    return qfac * x * y - (Complex(1.0) / qfac) * y * x;
}

double rel_residual(const CMat& lhs, const CMat& rhs) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
        throw DimensionError("rel_residual: size mismatch");
    const double den = std::max({1.0, lhs.norm(), rhs.norm()});
    return (lhs - rhs).norm() / den;
}

Eigensystem eig_general_full(const CMat& a, int dim_cap) {
    if (a.rows() != a.cols()) throw DimensionError("eig_general: matrix must be square");
    if (a.rows() > dim_cap)
        throw ResourceLimitError("eig_general: dimension " + std::to_string(a.rows()) +
                                 " exceeds cap " + std::to_string(dim_cap));
    Eigen::ComplexEigenSolver<CMat> solver(a, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eig_general: QR iteration did not converge within " +
                               std::to_string(solver.getMaxIterations() * a.rows()) +
                               " iterations");
    const Eigen::Index n = a.rows();
    std::vector<int> order(n);
    for (Eigen::Index i = 0; i < n; ++i) order[i] = int(i);
    const auto& vals = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        if (vals(i).real() != vals(j).real()) return vals(i).real() < vals(j).real();
        return vals(i).imag() < vals(j).imag();
    });
    Eigensystem out;
    out.values.reserve(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values.push_back(vals(order[i]));
        out.vectors.col(i) = solver.eigenvectors().col(order[i]);
    }
    return out;
}

std::vector<Complex> eig_general(const CMat& a, int dim_cap) {
    return eig_general_full(a, dim_cap).values;
}

// --------------------------------------------------- two-level products

namespace {

struct LevelIter {
    // enumerates all base indices with the given bits cleared
    std::vector<Eigen::Index> bases;
};

LevelIter level_bases(Eigen::Index dim, int bit_hi, int bit_lo) {
    LevelIter it;
    const Eigen::Index mask = (Eigen::Index(1) << bit_hi) | (Eigen::Index(1) << bit_lo);
    it.bases.reserve(dim / 4);
    for (Eigen::Index i = 0; i < dim; ++i)
        if ((i & mask) == 0) it.bases.push_back(i);
    return it;
}

} // namespace

CMat apply_two_level_left(const CMat& a, const Eigen::Matrix4cd& m, int bit_hi, int bit_lo) {
    const Eigen::Index dim = a.rows();
    if (bit_hi == bit_lo || (Eigen::Index(1) << bit_hi) >= dim || (Eigen::Index(1) << bit_lo) >= dim)
        throw DimensionError("apply_two_level_left: bad bit positions");
    CMat out = CMat::Zero(dim, a.cols());
    const Eigen::Index hi = Eigen::Index(1) << bit_hi;
    const Eigen::Index lo = Eigen::Index(1) << bit_lo;
    for (Eigen::Index base : level_bases(dim, bit_hi, bit_lo).bases) {
        const Eigen::Index r[4] = {base, base + lo, base + hi, base + hi + lo};
        for (int s = 0; s < 4; ++s) {
            for (int t = 0; t < 4; ++t) {
                const Complex c = m(s, t);
                if (c != Complex(0.0)) out.row(r[s]) += c * a.row(r[t]);
            }
        }
    }
    return out;
}

CMat apply_two_level_right(const CMat& a, const Eigen::Matrix4cd& m, int bit_hi, int bit_lo) {
    const Eigen::Index dim = a.cols();
    if (bit_hi == bit_lo || (Eigen::Index(1) << bit_hi) >= dim || (Eigen::Index(1) << bit_lo) >= dim)
        throw DimensionError("apply_two_level_right: bad bit positions");
    CMat out = CMat::Zero(a.rows(), dim);
    const Eigen::Index hi = Eigen::Index(1) << bit_hi;
    const Eigen::Index lo = Eigen::Index(1) << bit_lo;
    for (Eigen::Index base : level_bases(dim, bit_hi, bit_lo).bases) {
        const Eigen::Index c[4] = {base, base + lo, base + hi, base + hi + lo};
        for (int t = 0; t < 4; ++t) {
            for (int s = 0; s < 4; ++s) {
                const Complex v = m(s, t);
                if (v != Complex(0.0)) out.col(c[t]) += v * a.col(c[s]);
            }
        }
    }
    return out;
}

CMat apply_one_level_left(const CMat& a, const Eigen::Matrix2cd& m, int bit) {
    const Eigen::Index dim = a.rows();
    if ((Eigen::Index(1) << bit) >= dim) throw DimensionError("apply_one_level_left: bad bit");
    CMat out = CMat::Zero(dim, a.cols());
    const Eigen::Index b = Eigen::Index(1) << bit;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & b) continue;
        const Eigen::Index r[2] = {i, i + b};
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
                if (m(s, t) != Complex(0.0)) out.row(r[s]) += m(s, t) * a.row(r[t]);
    }
    return out;
}

CMat apply_one_level_right(const CMat& a, const Eigen::Matrix2cd& m, int bit) {
    const Eigen::Index dim = a.cols();
    if ((Eigen::Index(1) << bit) >= dim) throw DimensionError("apply_one_level_right: bad bit");
    CMat out = CMat::Zero(a.rows(), dim);
    const Eigen::Index b = Eigen::Index(1) << bit;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & b) continue;
        const Eigen::Index c[2] = {i, i + b};
        for (int t = 0; t < 2; ++t)
            for (int s = 0; s < 2; ++s)
                if (m(s, t) != Complex(0.0)) out.col(c[t]) += m(s, t) * a.col(c[s]);
    }
    return out;
}

// --------------------------------------------------------- LaurentMatrix

LaurentMatrix LaurentMatrix::identity(Eigen::Index n) {
    LaurentMatrix m(n, n);
    m.terms_[0] = CMat::Identity(n, n);
    return m;
}

LaurentMatrix LaurentMatrix::from_poly(Eigen::Index rows, Eigen::Index cols, Eigen::Index i,
                                       Eigen::Index j, const LaurentPoly& p) {
    LaurentMatrix m(rows, cols);
    for (const auto& [d, c] : p.coeffs()) {
        CMat t = CMat::Zero(rows, cols);
        t(i, j) = c;
        m.terms_[d] = std::move(t);
    }
    return m;
}

void LaurentMatrix::add_term(int degree, const CMat& m) {
    if (rows_ == 0 && cols_ == 0) {
        rows_ = m.rows();
        cols_ = m.cols();
    }
    if (m.rows() != rows_ || m.cols() != cols_)
        throw DimensionError("LaurentMatrix::add_term: size mismatch");
    auto it = terms_.find(degree);
    if (it == terms_.end())
        terms_[degree] = m;
    else
        it->second += m;
}

CMat LaurentMatrix::coefficient(int degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? CMat::Zero(rows_, cols_) : it->second;
}

LaurentPoly LaurentMatrix::entry(Eigen::Index i, Eigen::Index j) const {
    LaurentPoly p;
    for (const auto& [d, m] : terms_) p.set_coeff(d, m(i, j));
    p.prune();
    return p;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_)
        throw DimensionError("LaurentMatrix: size mismatch in +=");
    for (const auto& [d, m] : other.terms_) add_term(d, m);
    prune();
    return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_)
        throw DimensionError("LaurentMatrix: size mismatch in -=");
    for (const auto& [d, m] : other.terms_) add_term(d, -m);
    prune();
    return *this;
}

LaurentMatrix& LaurentMatrix::operator*=(Complex s) {
    for (auto& [d, m] : terms_) m *= s;
    prune();
    return *this;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("LaurentMatrix: size mismatch in *");
    LaurentMatrix out(a.rows(), b.cols());
    for (const auto& [da, ma] : a.terms())
        for (const auto& [db, mb] : b.terms()) out.add_term(da + db, ma * mb);
    out.prune();
    return out;
}

LaurentMatrix LaurentMatrix::scaled_by(const LaurentPoly& p) const {
    LaurentMatrix out(rows_, cols_);
    for (const auto& [dp, cp] : p.coeffs())
        for (const auto& [d, m] : terms_) out.add_term(d + dp, cp * m);
    out.prune();
    return out;
}

LaurentMatrix LaurentMatrix::shifted(int k) const {
    LaurentMatrix out(rows_, cols_);
    for (const auto& [d, m] : terms_) out.terms_[d + k] = m;
    return out;
}

LaurentMatrix LaurentMatrix::applied_left(const TwoLevelFactor& f) const {
    LaurentMatrix out(rows_, cols_);
    for (const auto& [df, mf] : f.terms)
        for (const auto& [d, m] : terms_)
            out.add_term(d + df, apply_two_level_left(m, mf, f.bit_hi, f.bit_lo));
    out.prune();
    return out;
}

LaurentMatrix LaurentMatrix::applied_right(const TwoLevelFactor& f) const {
    LaurentMatrix out(rows_, cols_);
    for (const auto& [df, mf] : f.terms)
        for (const auto& [d, m] : terms_)
            out.add_term(d + df, apply_two_level_right(m, mf, f.bit_hi, f.bit_lo));
    out.prune();
    return out;
}

LaurentMatrix LaurentMatrix::applied_left(const OneLevelFactor& f) const {
    LaurentMatrix out(rows_, cols_);
    for (const auto& [df, mf] : f.terms)
        for (const auto& [d, m] : terms_) out.add_term(d + df, apply_one_level_left(m, mf, f.bit));
    out.prune();
    return out;
}

LaurentMatrix LaurentMatrix::applied_right(const OneLevelFactor& f) const {
    LaurentMatrix out(rows_, cols_);
    for (const auto& [df, mf] : f.terms)
        for (const auto& [d, m] : terms_) out.add_term(d + df, apply_one_level_right(m, mf, f.bit));
    out.prune();
    return out;
}

LaurentMatrix LaurentMatrix::derivative() const {
    LaurentMatrix out(rows_, cols_);
    for (const auto& [d, m] : terms_)
        if (d != 0) out.terms_[d] = double(d) * m;
    return out;
}

CMat LaurentMatrix::eval(Complex lambda) const {
    CMat out = CMat::Zero(rows_, cols_);
    for (const auto& [d, m] : terms_) out += std::exp(double(d) * lambda) * m;
    return out;
}

LaurentMatrix LaurentMatrix::block(Eigen::Index i0, Eigen::Index j0, Eigen::Index r,
                                   Eigen::Index c) const {
    LaurentMatrix out(r, c);
    for (const auto& [d, m] : terms_) out.terms_[d] = m.block(i0, j0, r, c);
    out.prune();
    return out;
}

int LaurentMatrix::min_degree() const {
    if (terms_.empty()) throw Error("LaurentMatrix::min_degree: no terms");
    return terms_.begin()->first;
}

int LaurentMatrix::max_degree() const {
    if (terms_.empty()) throw Error("LaurentMatrix::max_degree: no terms");
    return terms_.rbegin()->first;
}

int LaurentMatrix::degree_span() const {
    if (terms_.empty()) return 0;
    return std::max(std::abs(min_degree()), std::abs(max_degree()));
}

double LaurentMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& [d, t] : terms_) m = std::max(m, t.cwiseAbs().maxCoeff());
    return m;
}

void LaurentMatrix::prune(double rel_tol) {
    const double cut = rel_tol * max_abs();
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.cwiseAbs().maxCoeff() <= cut)
            it = terms_.erase(it);
        else
            ++it;
    }
}

double laurent_residual(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("laurent_residual: size mismatch");
    double sup = 1.0;
    for (const auto& [d, m] : a.terms()) sup = std::max(sup, m.norm());
    for (const auto& [d, m] : b.terms()) sup = std::max(sup, m.norm());
    double dif = 0.0;
    for (const auto& [d, m] : a.terms()) dif = std::max(dif, (m - b.coefficient(d)).norm());
    for (const auto& [d, m] : b.terms()) dif = std::max(dif, (m - a.coefficient(d)).norm());
    return dif / sup;
}

double commutator_residual(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw DimensionError("commutator_residual: operands must be square, equal-sized");
    double sup = 1.0;
    for (const auto& [d, m] : a.terms()) sup = std::max(sup, m.norm());
    for (const auto& [d, m] : b.terms()) sup = std::max(sup, m.norm());
    double worst = 0.0;
    for (const auto& [da, ma] : a.terms())
        for (const auto& [db, mb] : b.terms())
            worst = std::max(worst, (ma * mb - mb * ma).norm() / std::max(1.0, sup * sup));
    return worst;
}

} // namespace xxz
