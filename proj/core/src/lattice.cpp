#include "xxz/lattice.hpp"

#include <cmath>

#include "xxz/quantum_algebra.hpp"

namespace xxz {

namespace {

void check_degree_span(int span, int bound, const std::string& what) {
    if (span > bound)
        throw DegreeBoundError(what + ": degree span " + std::to_string(span) +
                               " exceeds documented bound " + std::to_string(bound));
}

using M4 = Eigen::Matrix4cd;
using M2 = Eigen::Matrix2cd;

/// Homogeneous-gradation Lax coefficients on aux (x) site, u-degree +-1.
std::map<int, M4> lax_terms_hom(const ModelParams& p, bool hat) {
    const Complex q = p.q;
    const Complex s = p.sinh_imu();
    M4 plus = M4::Zero(), minus = M4::Zero();
    plus.diagonal() << q / 2.0, 0.5, 0.5, q / 2.0;
    minus.diagonal() << -0.5 / q, -0.5, -0.5, -0.5 / q;
    if (!hat) {
        plus(1, 2) = s;  // sigma- block at e^{+lambda}
        minus(2, 1) = s; // sigma+ block at e^{-lambda}
    } else {
        plus(2, 1) = s;
        minus(1, 2) = s;
    }
    return {{1, plus}, {-1, minus}};
}

/// Diagonal gauge V(lambda) = diag(1, e^lambda) acting on the auxiliary
/// level of the 4x4 Lax coefficients: L^(p) = V(l) L V(-l) and
/// Lhat^(p) = V(-l) Lhat V(l).
std::map<int, M4> lax_terms_principal(const ModelParams& p, bool hat) {
    const auto hom = lax_terms_hom(p, hat);
    M4 p0 = M4::Zero(), p1 = M4::Zero();
    p0(0, 0) = p0(1, 1) = 1;
    p1(2, 2) = p1(3, 3) = 1;
    const int sign = hat ? -1 : 1;
    std::map<int, M4> out;
    for (const auto& [d, m] : hom) {
        // left projector at degree sign*a, right projector at degree -sign*b
        for (int a : {0, 1})
            for (int b : {0, 1}) {
                const M4& pa = a ? p1 : p0;
                const M4& pb = b ? p1 : p0;
                const int deg = d + sign * a - sign * b;
                M4 term = pa * m * pb;
                if (term.cwiseAbs().maxCoeff() == 0.0) continue;
                auto it = out.find(deg);
                if (it == out.end())
                    out[deg] = term;
                else
                    it->second += term;
            }
    }
    return out;
}

std::map<int, M4> lax_terms(const ModelParams& p, bool hat, Gradation g) {
    return g == Gradation::homogeneous ? lax_terms_hom(p, hat) : lax_terms_principal(p, hat);
}

TwoLevelFactor lax_factor(const ModelParams& p, bool hat, Gradation g, int site, int sites) {
    TwoLevelFactor f;
    f.terms = lax_terms(p, hat, g);
    f.bit_hi = sites;        // auxiliary bit
    f.bit_lo = sites - site; // site bit
    return f;
}

LaurentMatrix laurent_from_terms4(const std::map<int, M4>& terms) {
    LaurentMatrix m(4, 4);
    for (const auto& [d, t] : terms) m.add_term(d, t);
    return m;
}

int resolve_sites(const ModelParams& p, int sites, int site_cap, const char* what) {
    const int n = sites < 0 ? p.sites : sites;
    if (n < 0) throw DimensionError(std::string(what) + ": negative chain length");
    if (n > site_cap)
        throw ResourceLimitError(std::string(what) + ": N = " + std::to_string(n) +
                                 " exceeds the dense-construction cap " + std::to_string(site_cap));
    return n;
}

} // namespace

// ------------------------------------------------------------- KMatrix

Eigen::Matrix2cd KMatrix::eval(Complex lambda) const {
    Eigen::Matrix2cd m;
    m << entries[0].eval(lambda), entries[1].eval(lambda), entries[2].eval(lambda),
        entries[3].eval(lambda);
    return m;
}

int KMatrix::degree_span() const {
    int span = 0;
    for (const auto& e : entries)
        if (!e.is_zero())
            span = std::max({span, std::abs(e.min_degree()), std::abs(e.max_degree())});
    return span;
}

OneLevelFactor KMatrix::as_factor(int bit) const {
    OneLevelFactor f;
    f.bit = bit;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (const auto& [d, c] : at(i, j).coeffs()) {
                auto it = f.terms.find(d);
                if (it == f.terms.end()) it = f.terms.emplace(d, M2::Zero()).first;
                it->second(i, j) += c;
            }
    return f;
}

LaurentMatrix OperatorMatrix::block(int i, int j) const {
    const Eigen::Index d = chain_dim();
    return mat.block(i * d, j * d, d, d);
}

// --------------------------------------------------------- construction

LaurentPoly k_scalar_x(const ModelParams& p) {
    // sinh(2 lambda - i m mu) - sinh(2 i mu zeta)
    LaurentPoly x;
    const Complex a = std::exp(Complex(0, -p.m * p.mu));
    x.set_coeff(2, 0.5 * a);
    x.set_coeff(-2, -0.5 / a);
    x += LaurentPoly::constant(-std::sinh(Complex(0, 2 * p.mu * p.zeta)));
    return x;
}

LaurentPoly k_scalar_y() { return LaurentPoly::sinh_two_lambda(); }

OperatorMatrix r_matrix(const ModelParams& p, Gradation gradation) {
    const Complex imu = Complex(0, p.mu);
    OperatorMatrix r;
    r.gradation = gradation;
    r.sites = 1;
    LaurentMatrix m(4, 4);
    const LaurentPoly shifted = LaurentPoly::sinh_shifted(imu);
    const LaurentPoly plain = LaurentPoly::sinh_shifted(0.0);
    for (const auto& [d, c] : shifted.coeffs()) {
        CMat t = CMat::Zero(4, 4);
        t(0, 0) = t(3, 3) = c;
        m.add_term(d, t);
    }
    for (const auto& [d, c] : plain.coeffs()) {
        CMat t = CMat::Zero(4, 4);
        t(1, 1) = t(2, 2) = c;
        m.add_term(d, t);
    }
    const Complex s = p.sinh_imu();
    if (gradation == Gradation::homogeneous) {
        CMat up = CMat::Zero(4, 4), dn = CMat::Zero(4, 4);
        up(1, 2) = s; // sigma- e^{+lambda} sinh(i mu) block
        dn(2, 1) = s; // sigma+ e^{-lambda} sinh(i mu) block
        m.add_term(1, up);
        m.add_term(-1, dn);
    } else {
        CMat c0 = CMat::Zero(4, 4);
        c0(1, 2) = c0(2, 1) = s; // symmetric constant off-diagonal entries
        m.add_term(0, c0);
    }
    m.prune();
    r.mat = std::move(m);
    check_degree_span(r.mat.degree_span(), 1, "r_matrix");
    return r;
}

std::pair<OperatorMatrix, OperatorMatrix> l_operators_fundamental(const ModelParams& p,
                                                                  Gradation gradation) {
    OperatorMatrix l, lhat;
    l.gradation = lhat.gradation = gradation;
    l.sites = lhat.sites = 1;
    l.mat = laurent_from_terms4(lax_terms(p, /*hat=*/false, gradation));
    lhat.mat = laurent_from_terms4(lax_terms(p, /*hat=*/true, gradation));
    check_degree_span(l.mat.degree_span(), 1, "l_operator");
    check_degree_span(lhat.mat.degree_span(), 1, "l_operator_hat");
    return {std::move(l), std::move(lhat)};
}

KMatrix k_right(const ModelParams& p, KForm form, Gradation gradation) {
    KMatrix k;
    k.side = Side::right;
    k.gradation = Gradation::homogeneous;
    k.tag = form == KForm::blob ? "blob" : "explicit";
    if (form == KForm::blob) {
        const LaurentPoly x = k_scalar_x(p);
        const LaurentPoly y = k_scalar_y();
        const Eigen::Matrix2cd u0 = blob_boundary_2x2(p);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                k.at(i, j) = y * u0(i, j);
                if (i == j) k.at(i, j) += x;
            }
    } else {
        const Complex sm = std::sinh(Complex(0, p.m * p.mu));
        const Complex sz = std::sinh(Complex(0, 2 * p.mu * p.zeta));
        k.at(0, 0) = LaurentPoly::exponential(2, -sm) + LaurentPoly::constant(-sz);
        k.at(1, 1) = LaurentPoly::exponential(-2, -sm) + LaurentPoly::constant(-sz);
        k.at(0, 1) = k.at(1, 0) = LaurentPoly::sinh_two_lambda();
    }
    if (gradation == Gradation::principal) {
        // K^(p) = V(lambda) K V(lambda), V = diag(1, e^lambda)
        k.gradation = Gradation::principal;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) k.at(i, j) = k.at(i, j).shifted(i + j);
        check_degree_span(k.degree_span(), 3, "k_right (principal)");
        return k;
    }
    check_degree_span(k.degree_span(), 2, "k_right");
    return k;
}

KMatrix k_left(BoundaryCase c, Gradation gradation, const ModelParams& p) {
    KMatrix k;
    k.side = Side::left;
    k.gradation = gradation;
    k.tag = to_string(c);
    const Complex eimu = std::exp(Complex(0, p.mu));
    if (gradation == Gradation::homogeneous) {
        switch (c) {
        case BoundaryCase::I:
            k.at(0, 0) = k.at(1, 1) = LaurentPoly::constant(1.0);
            break;
        case BoundaryCase::II:
            k.at(0, 0) = LaurentPoly::exponential(-2, Complex(1.0) / (eimu * eimu));
            k.at(1, 1) = LaurentPoly::exponential(2, eimu * eimu);
            break;
        case BoundaryCase::III:
            k.at(0, 0) = LaurentPoly::exponential(-1, Complex(1.0) / eimu);
            k.at(1, 1) = LaurentPoly::exponential(1, eimu);
            break;
        }
    } else {
        switch (c) {
        case BoundaryCase::I:
            k.at(0, 0) = LaurentPoly::exponential(1, eimu);
            k.at(1, 1) = LaurentPoly::exponential(-1, Complex(1.0) / eimu);
            break;
        case BoundaryCase::II:
            k.at(0, 0) = LaurentPoly::exponential(-1, Complex(1.0) / eimu);
            k.at(1, 1) = LaurentPoly::exponential(1, eimu);
            break;
        case BoundaryCase::III:
            k.at(0, 0) = k.at(1, 1) = LaurentPoly::constant(1.0);
            break;
        }
    }
    check_degree_span(k.degree_span(), 2, "k_left");
    return k;
}

KMatrix k_left_from_right(const KMatrix& k, const ModelParams& p) {
    KMatrix out;
    out.side = Side::left;
    out.gradation = k.gradation;
    out.tag = "dual";
    const Complex scale = std::exp(Complex(0, -p.mu)); // u -> u^{-1} e^{-i mu}
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.at(i, j) = k.at(j, i).substituted(-1, scale);
    return out;
}

OperatorMatrix monodromy(const ModelParams& p, int sites, int site_cap) {
    const int n = resolve_sites(p, sites, site_cap, "monodromy");
    OperatorMatrix t;
    t.gradation = p.gradation;
    t.sites = n;
    t.mat = LaurentMatrix::identity(Eigen::Index(2) << n);
    for (int j = 1; j <= n; ++j)
        t.mat = t.mat.applied_left(lax_factor(p, /*hat=*/false, p.gradation, j, n));
    check_degree_span(t.mat.degree_span(), n == 0 ? 0 : n + 1, "monodromy");
    return t;
}

OperatorMatrix monodromy_hat(const ModelParams& p, int sites, int site_cap) {
    const int n = resolve_sites(p, sites, site_cap, "monodromy_hat");
    OperatorMatrix t;
    t.gradation = p.gradation;
    t.sites = n;
    t.mat = LaurentMatrix::identity(Eigen::Index(2) << n);
    for (int j = 1; j <= n; ++j)
        t.mat = t.mat.applied_right(lax_factor(p, /*hat=*/true, p.gradation, j, n));
    check_degree_span(t.mat.degree_span(), n == 0 ? 0 : n + 1, "monodromy_hat");
    return t;
}

OperatorMatrix doubled_monodromy(const ModelParams& p, int sites, int site_cap) {
    const int n = resolve_sites(p, sites, site_cap, "doubled_monodromy");
    OperatorMatrix tau;
    tau.gradation = p.gradation;
    tau.sites = n;
    const KMatrix kr = k_right(p, KForm::blob, p.gradation);
    LaurentMatrix m = LaurentMatrix::identity(Eigen::Index(2) << n);
    m = m.applied_left(kr.as_factor(/*aux bit=*/n));
    for (int j = 1; j <= n; ++j) {
        m = m.applied_left(lax_factor(p, false, p.gradation, j, n));
        m = m.applied_right(lax_factor(p, true, p.gradation, j, n));
    }
    tau.mat = std::move(m);
    check_degree_span(tau.mat.degree_span(), 2 * n + 4, "doubled_monodromy");
    return tau;
}

LaurentMatrix weighted_trace_aux(const OperatorMatrix& tau, const Eigen::Matrix2cd& M,
                                 const KMatrix& kl) {
    const Eigen::Index d = tau.chain_dim();
    LaurentMatrix out(d, d);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            // W = M * K^l
            LaurentPoly w;
            for (int k = 0; k < 2; ++k) w += M(i, k) * kl.at(k, j);
            if (w.is_zero()) continue;
            out += tau.block(j, i).scaled_by(w);
        }
    out.prune();
    return out;
}

CMat weighted_trace_aux(const CMat& tau_at_lambda, const Eigen::Matrix2cd& M,
                        const Eigen::Matrix2cd& kl_at_lambda) {
    const Eigen::Index d = tau_at_lambda.rows() / 2;
    if (tau_at_lambda.rows() != 2 * d || tau_at_lambda.cols() != tau_at_lambda.rows())
        throw DimensionError("weighted_trace_aux: expected square aux (x) chain matrix");
    const Eigen::Matrix2cd w = M * kl_at_lambda;
    CMat out = CMat::Zero(d, d);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (w(i, j) != Complex(0.0)) out += w(i, j) * tau_at_lambda.block(j * d, i * d, d, d);
    return out;
}

Eigen::Matrix2cd trace_weight(const ModelParams& p, Gradation gradation) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    if (gradation == Gradation::homogeneous) {
        m(0, 0) = p.q;
        m(1, 1) = Complex(1.0) / p.q;
    }
    return m;
}

TransferMatrix transfer_matrix(const ModelParams& p, BoundaryCase c, int sites, int site_cap) {
    const OperatorMatrix tau = doubled_monodromy(p, sites, site_cap);
    TransferMatrix t;
    t.bcase = c;
    t.gradation = p.gradation;
    t.sites = tau.sites;
    t.mat = weighted_trace_aux(tau, trace_weight(p, p.gradation), k_left(c, p.gradation, p));
    check_degree_span(t.mat.degree_span(), 2 * tau.sites + 4, "transfer_matrix");
    return t;
}

TransferMatrix closed_transfer_matrix(const ModelParams& p, int sites, int site_cap) {
    const OperatorMatrix t = monodromy(p, sites, site_cap);
    TransferMatrix out;
    out.bcase = BoundaryCase::I;
    out.gradation = p.gradation;
    out.sites = t.sites;
    out.mat = t.block(0, 0) + t.block(1, 1);
    return out;
}

std::string to_string(HamiltonianRoute r) {
    switch (r) {
    case HamiltonianRoute::derivative: return "derivative";
    case HamiltonianRoute::blob: return "blob";
    case HamiltonianRoute::pauli: return "pauli";
    }
    return "?";
}

namespace {

void require_regular_hamiltonian_params(const ModelParams& p) {
    if (p.x_at_zero_vanishes())
        throw SingularNormalizationError(
            "hamiltonian: x(0) = 0 at zeta = " + std::to_string(p.zeta) +
            " (zeta = -m/2 or zeta = m/2 + pi/(2 mu) mod pi/mu); the 1/x(0) "
            "normalization of the boundary term is singular");
    if (std::abs(p.q + Complex(1.0) / p.q) < 1e-12)
        throw SingularNormalizationError("hamiltonian: mu = pi/2 makes the constant "
                                         "1/(2(q+q^{-1})) singular");
}

ChainOperator hamiltonian_blob(const ModelParams& p) {
    const int n = p.sites;
    const Eigen::Index dim = Eigen::Index(1) << n;
    const Complex s = p.sinh_imu();
    const Complex x0 = p.x_at_zero();
    const Complex yp0 = k_scalar_y().derivative().eval(0.0); // = 2
    ChainOperator h = ChainOperator::Zero(dim, dim);
    const auto blob = blob_generators(p);
    for (int l = 1; l <= n - 1; ++l) h += -0.5 * blob[l];
    h += -(s * yp0 / (4.0 * x0)) * blob[0];
    const Complex w = -s * p.x_prime_at_zero() / (4.0 * x0) - (n / 2.0) * p.cosh_imu() +
                      Complex(1.0) / (2.0 * (p.q + Complex(1.0) / p.q));
    h += w * ChainOperator::Identity(dim, dim);
    return h;
}

ChainOperator hamiltonian_pauli(const ModelParams& p) {
    const int n = p.sites;
    const Eigen::Index dim = Eigen::Index(1) << n;
    const Complex s = p.sinh_imu();
    const Complex ch = p.cosh_imu();
    ChainOperator h = ChainOperator::Zero(dim, dim);
    const CMat xx = kron(pauli::x(), pauli::x());
    const CMat yy = kron(pauli::y(), pauli::y());
    const CMat zz = kron(pauli::z(), pauli::z());
    for (int i = 1; i <= n - 1; ++i) h += -0.25 * embed(xx + yy + ch * zz, i, n);
    h += -0.25 * s * (embed(pauli::z(), n, n) - embed(pauli::z(), 1, n));
    h += -(double(n) + 1.0) / 4.0 * ch * ChainOperator::Identity(dim, dim);
    const Complex den = 4.0 * std::sinh(Complex(0, p.mu * (p.m / 2 + p.zeta))) *
                        std::cosh(Complex(0, p.mu * (p.m / 2 - p.zeta)));
    h += -(s * std::sinh(Complex(0, p.m * p.mu)) / den) * embed(pauli::z(), 1, n);
    h += (s / den) * embed(pauli::x(), 1, n);
    const Complex c1 = Complex(1.0) / (2.0 * (p.q + Complex(1.0) / p.q)); // c2 = 0
    h += c1 * ChainOperator::Identity(dim, dim);
    return h;
}

ChainOperator hamiltonian_derivative(const ModelParams& p) {
    ModelParams ph = p;
    ph.gradation = Gradation::homogeneous;
    const TransferMatrix t = transfer_matrix(ph, BoundaryCase::I);
    // exact d/dlambda at the origin: sum_d d * C_d
    CMat tp0 = CMat::Zero(t.mat.rows(), t.mat.cols());
    for (const auto& [d, m] : t.mat.terms()) tp0 += double(d) * m;
    const Complex pref = -std::pow(p.sinh_imu(), -2 * p.sites + 1) /
                         (4.0 * p.x_at_zero() * (p.q + Complex(1.0) / p.q));
    return pref * tp0;
}

} // namespace

ChainOperator hamiltonian(const ModelParams& p, HamiltonianRoute route) {
    require_regular_hamiltonian_params(p);
    switch (route) {
    case HamiltonianRoute::blob: return hamiltonian_blob(p);
    case HamiltonianRoute::pauli: return hamiltonian_pauli(p);
    case HamiltonianRoute::derivative: return hamiltonian_derivative(p);
    }
    throw Error("hamiltonian: unknown route");
}

} // namespace xxz
