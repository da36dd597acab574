#include "xxz/charges.hpp"

#include <cmath>

namespace xxz {

std::string to_string(ChargeRoute r) {
    switch (r) {
    case ChargeRoute::closed_form: return "closed_form";
    case ChargeRoute::recursion: return "recursion";
    case ChargeRoute::asymptotic: return "asymptotic";
    }
    return "?";
}

namespace {

GeneratorId kgen(int which) { return which == 1 ? GeneratorId::k1 : GeneratorId::k2; }
GeneratorId egen(int which) { return which == 1 ? GeneratorId::e1 : GeneratorId::e2; }
GeneratorId fgen(int which) { return which == 1 ? GeneratorId::f1 : GeneratorId::f2; }

Complex coupling(int which, const ModelParams& p) {
    if (which != 1 && which != 2) throw Error("charge index must be 1 or 2");
    return which == 1 ? p.x1 : p.x2;
}

} // namespace

Eigen::Matrix2cd abstract_charge(int which, Complex lambda, const ModelParams& p) {
    const Complex x = coupling(which, p);
    const Complex qh = std::sqrt(p.q);
    const Eigen::Matrix2cd k = eval_rep(kgen(which), lambda, p);
    const Eigen::Matrix2cd e = eval_rep(egen(which), lambda, p);
    const Eigen::Matrix2cd f = eval_rep(fgen(which), lambda, p);
    return k * e / qh + qh * k * f + x * k * k - x * Eigen::Matrix2cd::Identity();
}

ChainOperator charge_tower(int which, const ModelParams& p, ChargeRoute route) {
    const Complex x = coupling(which, p);
    const Eigen::Index dim = Eigen::Index(1) << p.sites;
    if (route == ChargeRoute::closed_form) {
        const ChainOperator K = coproduct_tower(kgen(which), p);
        const ChainOperator E = coproduct_tower(egen(which), p);
        const ChainOperator F = coproduct_tower(fgen(which), p);
        const Complex qh = std::sqrt(p.q);
        return K * E / qh + qh * K * F + x * K * K - x * ChainOperator::Identity(dim, dim);
    }
    if (route != ChargeRoute::recursion)
        throw Error("charge_tower: only closed_form and recursion construct towers");
    const Eigen::Matrix2cd site = abstract_charge(which, 0.0, p);
    const Eigen::Matrix2cd k = eval_rep(kgen(which), 0.0, p);
    const Eigen::Matrix2cd k2 = k * k;
    ChainOperator q = site;
    ChainOperator k2tower = k2;
    for (int n = 2; n <= p.sites; ++n) {
        q = kron(CMat::Identity(2, 2), q) + kron(site, k2tower);
        k2tower = kron(k2, k2tower);
    }
    return q;
}

ChainOperator charge_tower_unsubtracted(int which, const ModelParams& p) {
    const Complex x = coupling(which, p);
    const Eigen::Matrix2cd site =
        abstract_charge(which, 0.0, p) + x * Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd k2 =
        eval_rep(kgen(which), 0.0, p) * eval_rep(kgen(which), 0.0, p);
    ChainOperator q = site;
    ChainOperator k2tower = k2;
    for (int n = 2; n <= p.sites; ++n) {
        q = kron(CMat::Identity(2, 2), q) + kron(site, k2tower) - x * kron(CMat::Identity(2, 2), k2tower);
        k2tower = kron(k2, k2tower);
    }
    return q;
}

namespace {

/// Require M ~ c I and return c; used to pin the structurally known blocks
/// of the leading asymptotics.
Complex proportional_to_identity(const CMat& m, double tol, const char* what) {
    const Complex c = m.trace() / double(m.rows());
    const CMat dev = m - c * CMat::Identity(m.rows(), m.cols());
    const double rel = dev.norm() / std::max(1.0, m.norm());
    if (rel > tol)
        throw ExtractionError(std::string(what) +
                              ": leading block is not proportional to the identity "
                              "(relative deviation " +
                              std::to_string(rel) + "); upstream construction is inconsistent");
    return c;
}

ChargePair extract_homogeneous(const OperatorMatrix& tau, const ModelParams& p) {
    const Eigen::Index d = tau.chain_dim();
    const int top = tau.mat.max_degree();
    const CMat lead = tau.mat.coefficient(top);
    const CMat b12 = lead.block(0, d, d, d);
    const CMat b21 = lead.block(d, 0, d, d);
    const CMat b22 = lead.block(d, d, d, d);
    const Complex s = proportional_to_identity(b12, 1e-8, "extract (off-diagonal)");
    proportional_to_identity(b21, 1e-8, "extract (off-diagonal)");
    if (b22.norm() > 1e-8 * std::max(1.0, lead.norm()))
        throw ExtractionError("extract: lower-right leading block is not structurally zero");
    const Complex qm = p.q - Complex(1.0) / p.q;
    ChargePair out;
    out.sites = tau.sites;
    out.route = ChargeRoute::asymptotic;
    out.x1 = p.x1;
    out.x2 = p.x2;
    out.q1 = lead.block(0, 0, d, d) / (s * qm) - p.x1 * CMat::Identity(d, d);
    out.has_q2 = false;
    return out;
}

ChargePair extract_principal(const OperatorMatrix& tau, const ModelParams& p) {
    const Eigen::Index d = tau.chain_dim();
    const int top = tau.mat.max_degree();
    const CMat lead = tau.mat.coefficient(top);
    const CMat sub = tau.mat.coefficient(top - 1);
    if (lead.block(0, 0, d, d).norm() + lead.block(d, d, d, d).norm() >
        1e-8 * std::max(1.0, lead.norm()))
        throw ExtractionError("extract: leading order is not purely antidiagonal");
    const Complex c = proportional_to_identity(lead.block(0, d, d, d), 1e-8, "extract (antidiag)");
    const Complex c2 = proportional_to_identity(lead.block(d, 0, d, d), 1e-8, "extract (antidiag)");
    if (std::abs(c - c2) > 1e-8 * std::max(1.0, std::abs(c)))
        throw ExtractionError("extract: antidiagonal leading blocks disagree");
    const Complex norm = 2.0 * p.sinh_imu() * c;
    ChargePair out;
    out.sites = tau.sites;
    out.route = ChargeRoute::asymptotic;
    out.x1 = p.x1;
    out.x2 = p.x2;
    out.q1 = sub.block(0, 0, d, d) / norm - p.x1 * CMat::Identity(d, d);
    out.q2 = sub.block(d, d, d, d) / norm - p.x2 * CMat::Identity(d, d);
    out.has_q2 = true;
    return out;
}

} // namespace

ChargePair extract_charges_from(const OperatorMatrix& tau, const ModelParams& p) {
    return tau.gradation == Gradation::homogeneous ? extract_homogeneous(tau, p)
                                                   : extract_principal(tau, p);
}

ChargePair extract_charges_asymptotic(const ModelParams& p, Gradation gradation) {
    ModelParams pg = p;
    pg.gradation = gradation;
    return extract_charges_from(doubled_monodromy(pg), pg);
}

CMat extracted_leading_matrix(const ModelParams& p) {
    ModelParams ph = p;
    ph.gradation = Gradation::homogeneous;
    const OperatorMatrix tau = doubled_monodromy(ph);
    const Eigen::Index d = tau.chain_dim();
    const CMat lead = tau.mat.coefficient(tau.mat.max_degree());
    const Complex s =
        proportional_to_identity(lead.block(0, d, d, d), 1e-8, "extracted_leading_matrix");
    const Complex qm = ph.q - Complex(1.0) / ph.q;
    return lead / (s * qm);
}

double intertwiner_residual_K(int which, Complex lambda, const ModelParams& p) {
    const KMatrix k = k_right(p, KForm::explicit_entries, Gradation::homogeneous);
    const Eigen::Matrix2cd km = k.eval(lambda);
    return rel_residual(abstract_charge(which, lambda, p) * km,
                        km * abstract_charge(which, -lambda, p));
}

namespace {

/// (rho_s (x) rho_0) of the coproduct (prime = flipped legs) of generator g.
Eigen::Matrix4cd coproduct_two_site(GeneratorId g, Complex s, const ModelParams& p, bool prime) {
    const Eigen::Matrix2cd y1 = eval_rep(g, s, p);
    const Eigen::Matrix2cd y2 = eval_rep(g, 0.0, p);
    if (g == GeneratorId::k1 || g == GeneratorId::k2) return kron(y1, y2);
    const GeneratorId kid = generator_family(g) == 1 ? GeneratorId::k1 : GeneratorId::k2;
    const Eigen::Matrix2cd k1m = eval_rep(kid, s, p);
    const Eigen::Matrix2cd k2m = eval_rep(kid, 0.0, p);
    if (prime) return kron(y1, k2m.inverse()) + kron(k1m, y2);
    return kron(k1m.inverse(), y2) + kron(y1, k2m);
}

} // namespace

double intertwiner_residual_L(GeneratorId g, Complex lambda, const ModelParams& p) {
    const auto [l, lhat] = l_operators_fundamental(p, Gradation::homogeneous);
    const CMat lm = l.eval(lambda);
    const CMat lhm = lhat.eval(lambda);
    const CMat d_prime = coproduct_two_site(g, lambda, p, /*prime=*/true);
    const CMat d_plain = coproduct_two_site(g, lambda, p, /*prime=*/false);
    const double r1 = rel_residual(d_prime * lm, lm * d_plain);
    const CMat dm_plain = coproduct_two_site(g, -lambda, p, /*prime=*/false);
    const CMat dm_prime = coproduct_two_site(g, -lambda, p, /*prime=*/true);
    const double r2 = rel_residual(dm_plain * lhm, lhm * dm_prime);
    return std::max(r1, r2);
}

double intertwiner_residual_T(int which, Complex lambda, const ModelParams& p) {
    ModelParams ph = p;
    ph.gradation = Gradation::homogeneous;
    const OperatorMatrix tau = doubled_monodromy(ph);
    const Eigen::Index d = tau.chain_dim();
    const ChainOperator qn = charge_tower(which, ph);
    const GeneratorId kid = kgen(which);
    auto rep_op = [&](Complex s) {
        const Eigen::Matrix2cd k2 = eval_rep(kid, s, ph) * eval_rep(kid, s, ph);
        return kron(abstract_charge(which, s, ph), CMat::Identity(d, d)) + kron(k2, qn);
    };
    const CMat tm = tau.eval(lambda);
    return rel_residual(rep_op(lambda) * tm, tm * rep_op(-lambda));
}

} // namespace xxz
