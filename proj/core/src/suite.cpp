#include "xxz/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace xxz {

const char* const kSuiteVersion = "0.1.0";

// ------------------------------------------------------------------ rng

std::uint64_t DetRng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double DetRng::uniform(double a, double b) {
    const double u = double(next() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
}

Complex DetRng::spectral_sample() { return {uniform(-1.5, 1.5), uniform(-1.0, 1.0)}; }

std::uint64_t check_stream_seed(std::uint64_t seed, std::string_view name, std::uint64_t draw) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    h ^= seed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= draw * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    return h ? h : 1;
}

ModelParams draw_params(DetRng& rng, const SuiteConfig& cfg, int sites, Gradation g) {
    const bool fixed = cfg.mu.has_value() && cfg.m.has_value() && cfg.zeta.has_value();
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (int attempt = 0; attempt < 256; ++attempt) {
        const double mu = cfg.mu ? *cfg.mu : rng.uniform(cfg.mu_min, cfg.mu_max);
        const double m = cfg.m ? *cfg.m : rng.uniform(cfg.m_min, cfg.m_max);
        const double zeta = cfg.zeta ? *cfg.zeta : rng.uniform(cfg.zeta_min, cfg.zeta_max);
        ModelParams p;
        try {
            p = make_params(mu, m, zeta, sites, g);
        } catch (const Error&) {
            if (fixed) throw;
            continue;
        }
        if (!fixed) {
            if (std::abs(std::sin(mu)) < 0.05) continue;
            if (std::abs(mu - half_pi) < 0.05) continue;
            if (std::abs(p.x_at_zero()) < 0.05) continue;
            if (std::abs(zeta + m / 2.0) < 0.02) continue;
        }
        return p;
    }
    throw Error("draw_params: no regular parameter point found in range");
}

// --------------------------------------------------- small dense helpers

namespace {

/// Embed a two-space 4x4 operator into n two-dimensional spaces at
/// positions (sa, sb); space 0 is the leftmost Kronecker factor.
CMat embed_pair_dense(const CMat& m4, int sa, int sb, int n_spaces) {
    const Eigen::Index dim = Eigen::Index(1) << n_spaces;
    const int ba = n_spaces - 1 - sa;
    const int bb = n_spaces - 1 - sb;
    CMat out = CMat::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const int ra = int((r >> ba) & 1), rb = int((r >> bb) & 1);
        const Eigen::Index rest = r & ~((Eigen::Index(1) << ba) | (Eigen::Index(1) << bb));
        for (int ca = 0; ca < 2; ++ca)
            for (int cb = 0; cb < 2; ++cb) {
                const Complex v = m4(ra * 2 + rb, ca * 2 + cb);
                if (v == Complex(0.0)) continue;
                const Eigen::Index c =
                    rest | (Eigen::Index(ca) << ba) | (Eigen::Index(cb) << bb);
                out(r, c) = v;
            }
    }
    return out;
}

/// Lift a 2 chain x 2 chain auxiliary-block matrix into
/// aux1 (x) aux2 (x) chain, acting on auxiliary space `which` (1 or 2).
CMat lift_aux_pair(const CMat& tau, int which, Eigen::Index chain) {
    CMat out = CMat::Zero(4 * chain, 4 * chain);
    const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) {
            Eigen::Matrix2cd unit = Eigen::Matrix2cd::Zero();
            unit(a, ap) = 1;
            const CMat blk = tau.block(a * chain, ap * chain, chain, chain);
            out += which == 1 ? kron(kron(unit, id2), blk) : kron(kron(id2, unit), blk);
        }
    return out;
}

using L2M = Laurent2Matrix;

L2M lift4(const LaurentMatrix& m, int e1, int e2) {
    L2M out(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i * 4 + j] = Laurent2::lift(m.entry(i, j), e1, e2);
    return out;
}

/// Embed a two-space 4x4 Laurent2 matrix into n spaces at (sa, sb).
L2M l2_embed_pair(const L2M& m4, int sa, int sb, int n_spaces) {
    const int dim = 1 << n_spaces;
    const int ba = n_spaces - 1 - sa;
    const int bb = n_spaces - 1 - sb;
    L2M out(std::size_t(dim) * dim);
    for (int r = 0; r < dim; ++r) {
        const int ra = (r >> ba) & 1, rb = (r >> bb) & 1;
        const int rest = r & ~((1 << ba) | (1 << bb));
        for (int ca = 0; ca < 2; ++ca)
            for (int cb = 0; cb < 2; ++cb) {
                const int c = rest | (ca << ba) | (cb << bb);
                out[std::size_t(r) * dim + c] = m4[(ra * 2 + rb) * 4 + (ca * 2 + cb)];
            }
    }
    return out;
}

L2M l2_embed_one(const std::array<Laurent2, 4>& m2, int s, int n_spaces) {
    const int dim = 1 << n_spaces;
    const int bs = n_spaces - 1 - s;
    L2M out(std::size_t(dim) * dim);
    for (int r = 0; r < dim; ++r) {
        const int rs = (r >> bs) & 1;
        const int rest = r & ~(1 << bs);
        for (int cs = 0; cs < 2; ++cs) {
            const int c = rest | (cs << bs);
            out[std::size_t(r) * dim + c] = m2[rs * 2 + cs];
        }
    }
    return out;
}

LaurentMatrix perm_conjugated(const LaurentMatrix& r) {
    const Eigen::Matrix4cd p = permutation_4();
    LaurentMatrix out(4, 4);
    for (const auto& [d, m] : r.terms()) out.add_term(d, p * m * p);
    return out;
}

OneLevelFactor gauge_factor(int bit, bool inverse) {
    OneLevelFactor f;
    f.bit = bit;
    Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero(), p1 = Eigen::Matrix2cd::Zero();
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    f.terms[0] = p0;
    f.terms[inverse ? -1 : 1] = p1;
    return f;
}

ModelParams with_gradation(const ModelParams& p, Gradation g) {
    ModelParams out = p;
    out.gradation = g;
    return out;
}

} // namespace

// ------------------------------------------------------ residual helpers

double ybe_symbolic_residual(const ModelParams& p, Gradation g) {
    const OperatorMatrix r = r_matrix(p, g);
    const L2M r12 = l2_embed_pair(lift4(r.mat, 1, -1), 0, 1, 3);
    const L2M r13 = l2_embed_pair(lift4(r.mat, 1, 0), 0, 2, 3);
    const L2M r23 = l2_embed_pair(lift4(r.mat, 0, 1), 1, 2, 3);
    const L2M lhs = l2m_mul(8, l2m_mul(8, r12, r13), r23);
    const L2M rhs = l2m_mul(8, l2m_mul(8, r23, r13), r12);
    return l2m_distance(lhs, rhs);
}

double ybe_sampled_residual(const ModelParams& p, Gradation g, const LambdaPairs& pairs) {
    const OperatorMatrix r = r_matrix(p, g);
    double worst = 0.0;
    for (const auto& [l1, l2] : pairs) {
        const CMat r12 = embed_pair_dense(r.eval(l1 - l2), 0, 1, 3);
        const CMat r13 = embed_pair_dense(r.eval(l1), 0, 2, 3);
        const CMat r23 = embed_pair_dense(r.eval(l2), 1, 2, 3);
        worst = std::max(worst, rel_residual(r12 * r13 * r23, r23 * r13 * r12));
    }
    return worst;
}

double fundamental_exchange_residual(const ModelParams& p) {
    const OperatorMatrix r = r_matrix(p, Gradation::homogeneous);
    const auto [l, lhat] = l_operators_fundamental(p, Gradation::homogeneous);
    const L2M r12 = l2_embed_pair(lift4(r.mat, 1, -1), 0, 1, 3);
    const L2M l13 = l2_embed_pair(lift4(l.mat, 1, 0), 0, 2, 3);
    const L2M l23 = l2_embed_pair(lift4(l.mat, 0, 1), 1, 2, 3);
    const L2M lhs = l2m_mul(8, l2m_mul(8, r12, l13), l23);
    const L2M rhs = l2m_mul(8, l2m_mul(8, l23, l13), r12);
    return l2m_distance(lhs, rhs);
}

double r_blob_form_residual(const ModelParams& p) {
    const OperatorMatrix r = r_matrix(p, Gradation::homogeneous);
    LaurentMatrix ref(4, 4);
    const Eigen::Matrix4cd perm = permutation_4();
    const CMat blob = blob_bulk_4x4(p);
    const LaurentPoly shifted = LaurentPoly::sinh_shifted(Complex(0, p.mu));
    const LaurentPoly plain = LaurentPoly::sinh_shifted(0.0);
    for (const auto& [d, c] : shifted.coeffs()) ref.add_term(d, c * perm);
    for (const auto& [d, c] : plain.coeffs()) ref.add_term(d, c * (perm * blob));
    double worst = laurent_residual(r.mat, ref);
    worst = std::max(worst, rel_residual(r.eval(0.0), p.sinh_imu() * CMat(perm)));
    return worst;
}

double r_gauge_residual(const ModelParams& p) {
    const OperatorMatrix rh = r_matrix(p, Gradation::homogeneous);
    const OperatorMatrix rp = r_matrix(p, Gradation::principal);
    const LaurentMatrix conj = rh.mat.applied_left(gauge_factor(1, false))
                                   .applied_right(gauge_factor(1, true));
    return laurent_residual(rp.mat, conj);
}

double lax_fundamental_residual(const ModelParams& p) {
    const OperatorMatrix r = r_matrix(p, Gradation::homogeneous);
    const auto [l, lhat] = l_operators_fundamental(p, Gradation::homogeneous);
    // Lhat must differ from L exactly by swapping the off-diagonal degrees.
    LaurentMatrix swapped(4, 4);
    for (const auto& [d, m] : l.mat.terms()) {
        CMat diag = m, off = CMat::Zero(4, 4);
        off(1, 2) = m(1, 2);
        off(2, 1) = m(2, 1);
        diag(1, 2) = diag(2, 1) = 0;
        swapped.add_term(d, diag);
        swapped.add_term(-d, off);
    }
    return std::max(laurent_residual(l.mat, r.mat), laurent_residual(lhat.mat, swapped));
}

double lax_hat_inverse_residual(const ModelParams& p, Complex lambda) {
    const auto [l, lhat] = l_operators_fundamental(p, Gradation::homogeneous);
    const CMat prod = l.eval(-lambda) * lhat.eval(lambda);
    return rel_residual(prod, prod(0, 0) * CMat::Identity(4, 4));
}

namespace {

std::array<Laurent2, 4> lift_k2(const KMatrix& k, int e1, int e2) {
    std::array<Laurent2, 4> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i * 2 + j] = Laurent2::lift(k.at(i, j), e1, e2);
    return out;
}

double reflection_residual_impl(const OperatorMatrix& r, const KMatrix& k) {
    const LaurentMatrix rp = perm_conjugated(r.mat);
    const L2M r12d = lift4(r.mat, 1, -1);
    const L2M r21s = lift4(rp, 1, 1);
    const L2M r12s = lift4(r.mat, 1, 1);
    const L2M r21d = lift4(rp, 1, -1);
    const L2M k1 = l2_embed_one(lift_k2(k, 1, 0), 0, 2);
    const L2M k2 = l2_embed_one(lift_k2(k, 0, 1), 1, 2);
    const L2M lhs = l2m_mul(4, l2m_mul(4, l2m_mul(4, r12d, k1), r21s), k2);
    const L2M rhs = l2m_mul(4, l2m_mul(4, l2m_mul(4, k2, r12s), k1), r21d);
    return l2m_distance(lhs, rhs);
}

} // namespace

double reflection_symbolic_residual(const ModelParams& p, KForm form, Gradation g) {
    return reflection_residual_impl(r_matrix(p, g), k_right(p, form, g));
}

double reflection_sampled_residual(const ModelParams& p, KForm form, Gradation g,
                                   const LambdaPairs& pairs) {
    const OperatorMatrix r = r_matrix(p, g);
    const KMatrix k = k_right(p, form, g);
    const Eigen::Matrix4cd perm = permutation_4();
    const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
    double worst = 0.0;
    for (const auto& [l1, l2] : pairs) {
        const CMat r12d = r.eval(l1 - l2);
        const CMat r21s = perm * r.eval(l1 + l2) * perm;
        const CMat r12s = r.eval(l1 + l2);
        const CMat r21d = perm * r.eval(l1 - l2) * perm;
        const CMat k1 = kron(k.eval(l1), id2);
        const CMat k2 = kron(id2, k.eval(l2));
        worst = std::max(worst, rel_residual(r12d * k1 * r21s * k2, k2 * r12s * k1 * r21d));
    }
    return worst;
}

double k_right_forms_residual(const ModelParams& p) {
    const KMatrix kb = k_right(p, KForm::blob, Gradation::homogeneous);
    const KMatrix ke = k_right(p, KForm::explicit_entries, Gradation::homogeneous);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, coeff_distance(kb.entries[i], ke.entries[i]));
    const Eigen::Matrix2cd at0 = kb.eval(0.0);
    worst = std::max(worst,
                     rel_residual(at0, p.x_at_zero() * CMat(Eigen::Matrix2cd::Identity())));
    return worst;
}

double k_right_principal_display_residual(const ModelParams& p) {
    const KMatrix kp = k_right(p, KForm::blob, Gradation::principal);
    const Complex sm = std::sinh(Complex(0, p.m * p.mu));
    const Complex sz = std::sinh(Complex(0, 2 * p.mu * p.zeta));
    // normalized display entries; the gauge-built matrix is e^{lambda} times this
    KMatrix disp;
    disp.at(0, 0) = LaurentPoly::exponential(1, -sm) + LaurentPoly::exponential(-1, -sz);
    disp.at(1, 1) = LaurentPoly::exponential(-1, -sm) + LaurentPoly::exponential(1, -sz);
    disp.at(0, 1) = disp.at(1, 0) = LaurentPoly::sinh_two_lambda();
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            worst = std::max(worst, coeff_distance(kp.at(i, j), disp.at(i, j).shifted(1)));
    return worst;
}

double k_left_dual_residual(const ModelParams& p) {
    // diagonal limit of the right boundary family, normalized
    KMatrix lim;
    lim.side = Side::right;
    lim.at(0, 0) = LaurentPoly::exponential(2);
    lim.at(1, 1) = LaurentPoly::exponential(-2);
    const KMatrix dual = k_left_from_right(lim, p);
    const KMatrix ref = k_left(BoundaryCase::II, Gradation::homogeneous, p);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        worst = std::max(worst, coeff_distance(dual.entries[i], ref.entries[i]));
    return worst;
}

double eval_rep_consistency_residual(const ModelParams& p, Complex lambda) {
    const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
    double worst = rel_residual(eval_rep(GeneratorId::k1, lambda, p) *
                                    eval_rep(GeneratorId::k2, lambda, p),
                                id2);
    worst = std::max(worst, rel_residual(eval_rep(GeneratorId::e2, lambda, p),
                                         CMat(std::exp(-2.0 * lambda) * pauli::minus())));
    worst = std::max(worst, rel_residual(eval_rep(GeneratorId::f2, lambda, p),
                                         CMat(std::exp(2.0 * lambda) * pauli::plus())));
    worst = std::max(worst,
                     rel_residual(eval_rep(GeneratorId::e1, lambda, p), CMat(pauli::plus())));
    worst = std::max(worst,
                     rel_residual(eval_rep(GeneratorId::f1, lambda, p), CMat(pauli::minus())));
    Eigen::Matrix2cd qz = Eigen::Matrix2cd::Zero();
    qz(0, 0) = p.q;
    qz(1, 1) = Complex(1.0) / p.q;
    const Eigen::Matrix2cd k1m = eval_rep(GeneratorId::k1, lambda, p);
    worst = std::max(worst, rel_residual(k1m * k1m, qz));
    return worst;
}

double coassociativity_residual(const ModelParams& p) {
    double worst = 0.0;
    for (GeneratorId g :
         {GeneratorId::e1, GeneratorId::f1, GeneratorId::e2, GeneratorId::f2}) {
        worst = std::max(worst, rel_residual(coproduct_tower(g, p, CoproductOrder::left_nested),
                                             coproduct_tower(g, p, CoproductOrder::right_nested)));
    }
    const ChainOperator k1t = coproduct_tower(GeneratorId::k1, p);
    const ChainOperator k2t = coproduct_tower(GeneratorId::k2, p);
    worst = std::max(worst,
                     rel_residual(k1t * k2t, ChainOperator::Identity(k1t.rows(), k1t.cols())));
    return worst;
}

double monodromy_product_residual(const ModelParams& p, Complex lambda) {
    const ModelParams ph = with_gradation(p, Gradation::homogeneous);
    const OperatorMatrix t = monodromy(ph);
    const auto [l, lhat] = l_operators_fundamental(ph, Gradation::homogeneous);
    const CMat l4 = l.eval(lambda);
    const int n = ph.sites;
    CMat prod = CMat::Identity(Eigen::Index(2) << n, Eigen::Index(2) << n);
    for (int j = n; j >= 1; --j) {
        // product with the Lax factor on (aux, site j); aux is space 0,
        // site j is space j among n+1 spaces
        prod = prod * embed_pair_dense(l4, 0, j, n + 1);
    }
    return rel_residual(t.eval(lambda), prod);
}

double monodromy_asymptotics_residual(const ModelParams& p) {
    const ModelParams ph = with_gradation(p, Gradation::homogeneous);
    const int n = ph.sites;
    const Eigen::Index d = Eigen::Index(1) << n;
    const OperatorMatrix t = monodromy(ph);
    const OperatorMatrix th = monodromy_hat(ph);
    const Complex cn = std::pow(std::sqrt(ph.q) / 2.0, n);
    const Complex w = 2.0 * p.sinh_imu() / std::sqrt(ph.q);
    const ChainOperator k1t = coproduct_tower(GeneratorId::k1, ph);
    const ChainOperator e1t = coproduct_tower(GeneratorId::e1, ph);
    const ChainOperator f1t = coproduct_tower(GeneratorId::f1, ph);
    CMat ref = CMat::Zero(2 * d, 2 * d);
    ref.block(0, 0, d, d) = cn * k1t;
    ref.block(0, d, d, d) = cn * w * f1t;
    ref.block(d, d, d, d) = cn * k1t.inverse();
    double worst = rel_residual(t.mat.coefficient(n), ref);
    CMat refh = CMat::Zero(2 * d, 2 * d);
    refh.block(0, 0, d, d) = cn * k1t;
    refh.block(d, 0, d, d) = cn * w * e1t;
    refh.block(d, d, d, d) = cn * k1t.inverse();
    worst = std::max(worst, rel_residual(th.mat.coefficient(n), refh));
    return worst;
}

double doubled_reflection_residual(const ModelParams& p, Complex l1, Complex l2) {
    const ModelParams ph = with_gradation(p, Gradation::homogeneous);
    const OperatorMatrix tau = doubled_monodromy(ph);
    const OperatorMatrix r = r_matrix(ph, Gradation::homogeneous);
    const Eigen::Index chain = tau.chain_dim();
    const Eigen::Matrix4cd perm = permutation_4();
    auto ext = [&](const CMat& m4) { return kron(m4, CMat::Identity(chain, chain)); };
    const CMat t1 = lift_aux_pair(tau.eval(l1), 1, chain);
    const CMat t2 = lift_aux_pair(tau.eval(l2), 2, chain);
    const CMat r12d = ext(r.eval(l1 - l2));
    const CMat r21s = ext(perm * r.eval(l1 + l2) * perm);
    const CMat r12s = ext(r.eval(l1 + l2));
    const CMat r21d = ext(perm * r.eval(l1 - l2) * perm);
    return rel_residual(r12d * t1 * r21s * t2, t2 * r12s * t1 * r21d);
}

double doubled_assembly_residual(const ModelParams& p) {
    const OperatorMatrix tau = doubled_monodromy(p);
    const OperatorMatrix t = monodromy(p);
    const OperatorMatrix th = monodromy_hat(p);
    const KMatrix kr = k_right(p, KForm::blob, p.gradation);
    const LaurentMatrix klift =
        LaurentMatrix::identity(t.mat.rows()).applied_left(kr.as_factor(p.sites));
    const LaurentMatrix assembled = t.mat * klift * th.mat;
    return laurent_residual(tau.mat, assembled);
}

double doubled_gauge_residual(const ModelParams& p) {
    const OperatorMatrix tau_h = doubled_monodromy(with_gradation(p, Gradation::homogeneous));
    const OperatorMatrix tau_p = doubled_monodromy(with_gradation(p, Gradation::principal));
    const LaurentMatrix conj = tau_h.mat.applied_left(gauge_factor(p.sites, false))
                                   .applied_right(gauge_factor(p.sites, false));
    return laurent_residual(tau_p.mat, conj);
}

double transfer_case_form_residual(const ModelParams& p, BoundaryCase c) {
    const ModelParams ph = with_gradation(p, Gradation::homogeneous);
    const OperatorMatrix tau = doubled_monodromy(ph);
    const LaurentMatrix a1 = tau.block(0, 0);
    const LaurentMatrix a2 = tau.block(1, 1);
    const TransferMatrix t = transfer_matrix(ph, c);
    const Complex eimu = std::exp(Complex(0, ph.mu));
    LaurentMatrix ref(a1.rows(), a1.cols());
    switch (c) {
    case BoundaryCase::I:
        ref = ph.q * a1 + (Complex(1.0) / ph.q) * a2;
        break;
    case BoundaryCase::II:
        ref = (a1 * (Complex(1.0) / eimu)).shifted(-2) + (a2 * eimu).shifted(2);
        break;
    case BoundaryCase::III:
        ref = a1.shifted(-1) + a2.shifted(1);
        break;
    }
    return laurent_residual(t.mat, ref);
}

double transfer_gauge_residual(const ModelParams& p, BoundaryCase c) {
    const TransferMatrix th = transfer_matrix(with_gradation(p, Gradation::homogeneous), c);
    const TransferMatrix tp = transfer_matrix(with_gradation(p, Gradation::principal), c);
    return laurent_residual(tp.mat, th.mat.shifted(1));
}

double closed_commutativity_residual(const ModelParams& p) {
    const TransferMatrix t = closed_transfer_matrix(with_gradation(p, Gradation::homogeneous));
    return commutator_residual(t.mat, t.mat);
}

double open_commutativity_symbolic_residual(const ModelParams& p, BoundaryCase c) {
    const TransferMatrix t = transfer_matrix(with_gradation(p, Gradation::homogeneous), c);
    return commutator_residual(t.mat, t.mat);
}

double open_commutativity_sampled_residual(const ModelParams& p, BoundaryCase c, Complex l1,
                                           Complex l2) {
    const TransferMatrix t = transfer_matrix(with_gradation(p, Gradation::homogeneous), c);
    const CMat a = t.eval(l1);
    const CMat b = t.eval(l2);
    return rel_residual(a * b, b * a);
}

double charge_routes_residual(const ModelParams& p) {
    double worst = 0.0;
    for (int i : {1, 2}) {
        const ChainOperator closed = charge_tower(i, p, ChargeRoute::closed_form);
        const ChainOperator rec = charge_tower(i, p, ChargeRoute::recursion);
        worst = std::max(worst, rel_residual(closed, rec));
        if (p.sites == 1)
            worst = std::max(worst, rel_residual(closed, CMat(abstract_charge(i, 0.0, p))));
    }
    return worst;
}

double charge_variant_residual(const ModelParams& p) {
    const Eigen::Index d = Eigen::Index(1) << p.sites;
    double worst = 0.0;
    for (int i : {1, 2}) {
        const Complex x = i == 1 ? p.x1 : p.x2;
        const ChainOperator expected =
            charge_tower(i, p, ChargeRoute::closed_form) + x * CMat::Identity(d, d);
        worst = std::max(worst, rel_residual(charge_tower_unsubtracted(i, p), expected));
    }
    return worst;
}

double charge_extraction_residual(const ModelParams& p, Gradation g) {
    const ChargePair cp = extract_charges_asymptotic(p, g);
    double worst = rel_residual(cp.q1, charge_tower(1, p, ChargeRoute::closed_form));
    if (cp.has_q2)
        worst = std::max(worst, rel_residual(cp.q2, charge_tower(2, p, ChargeRoute::closed_form)));
    return worst;
}

namespace {

struct TauBlocksAt {
    CMat a1, b, c, a2;
};

TauBlocksAt tau_blocks_at(const OperatorMatrix& tau, Complex lambda) {
    const Eigen::Index d = tau.chain_dim();
    const CMat m = tau.eval(lambda);
    return {m.block(0, 0, d, d), m.block(0, d, d, d), m.block(d, 0, d, d), m.block(d, d, d, d)};
}

double exchange_relations_residual_impl(const ModelParams& p, const OperatorMatrix& tau,
                                        int which, Complex lambda, Complex x_override,
                                        bool use_override) {
    const auto [a1, b, c, a2] = tau_blocks_at(tau, lambda);
    const ChainOperator qn = charge_tower(which, p, ChargeRoute::closed_form);
    const double eta = which == 1 ? 1.0 : -1.0;
    const Complex x = use_override ? x_override : (which == 1 ? p.x1 : p.x2);
    const Complex q = p.q;
    const Complex imu(0, p.mu);
    const Complex qe = std::pow(q, eta);
    auto e = [](Complex z) { return std::exp(z); };
    const CMat bmc = b - c;
    double worst = rel_residual(qn * a1 - a1 * qn, e(lambda - eta * (lambda + imu)) * bmc);
    worst = std::max(worst,
                     rel_residual(qn * a2 - a2 * qn, -e(-lambda + eta * (lambda + imu)) * bmc));
    worst = std::max(
        worst, rel_residual(q_commutator(qn, c, Complex(1.0) / qe),
                            e(lambda - eta * lambda) * a2 - e(-lambda + eta * lambda) * a1 +
                                x * (qe - Complex(1.0) / qe) * c));
    worst = std::max(
        worst, rel_residual(q_commutator(qn, b, qe),
                            e(-lambda + eta * lambda) * a1 - e(lambda - eta * lambda) * a2 +
                                x * (Complex(1.0) / qe - qe) * b));
    return worst;
}

} // namespace

double exchange_relations_residual(const ModelParams& p, int which, Complex lambda) {
    const ModelParams ph = with_gradation(p, Gradation::homogeneous);
    const OperatorMatrix tau = doubled_monodromy(ph);
    return exchange_relations_residual_impl(ph, tau, which, lambda, 0.0, false);
}

double exchange_relation_broken_x_residual(const ModelParams& p, Complex lambda, double x_shift) {
    const ModelParams ph = with_gradation(p, Gradation::homogeneous);
    const OperatorMatrix tau = doubled_monodromy(ph);
    return exchange_relations_residual_impl(ph, tau, 1, lambda, ph.x1 + x_shift, true);
}

SymmetryResidual symmetry_residual(const ModelParams& p, BoundaryCase c, Complex lambda) {
    const ModelParams ph = with_gradation(p, Gradation::homogeneous);
    const OperatorMatrix tau = doubled_monodromy(ph);
    const TransferMatrix t = transfer_matrix(ph, c);
    const auto blocks = tau_blocks_at(tau, lambda);
    const CMat bmc = blocks.b - blocks.c;
    const CMat tm = t.eval(lambda);
    const ChainOperator q1 = charge_tower(1, ph, ChargeRoute::closed_form);
    const ChainOperator q2 = charge_tower(2, ph, ChargeRoute::closed_form);
    const Complex imu(0, ph.mu);
    auto comm = [](const CMat& a, const CMat& b) { return CMat(a * b - b * a); };
    const CMat zero = CMat::Zero(tm.rows(), tm.cols());
    SymmetryResidual out;
    switch (c) {
    case BoundaryCase::I: {
        out.vanishing = rel_residual(comm(tm, q1), zero);
        const Complex w = -2.0 * std::sinh(2.0 * (lambda + imu));
        out.remainder = rel_residual(comm(tm, q2), w * bmc);
        break;
    }
    case BoundaryCase::II: {
        out.vanishing = rel_residual(comm(tm, q2), zero);
        const Complex w = 2.0 * std::sinh(2.0 * (lambda + imu));
        out.remainder = rel_residual(comm(tm, q1), w * bmc);
        break;
    }
    case BoundaryCase::III: {
        out.vanishing = rel_residual(comm(tm, q1 + q2), zero);
        const Complex w = 2.0 * std::sinh(lambda + imu);
        out.remainder = std::max(rel_residual(comm(tm, q1), w * bmc),
                                 rel_residual(comm(tm, q2), -w * bmc));
        break;
    }
    }
    return out;
}

double blob_charge_commutation_residual(const ModelParams& p) {
    const auto blobs = blob_generators(p);
    const ChainOperator q1 = charge_tower(1, p, ChargeRoute::closed_form);
    const ChainOperator k1t = coproduct_tower(GeneratorId::k1, p);
    const ChainOperator e1t = coproduct_tower(GeneratorId::e1, p);
    const ChainOperator f1t = coproduct_tower(GeneratorId::f1, p);
    const CMat zero = CMat::Zero(q1.rows(), q1.cols());
    double worst = 0.0;
    for (std::size_t l = 0; l < blobs.size(); ++l) {
        worst = std::max(worst, rel_residual(blobs[l] * q1 - q1 * blobs[l], zero));
        if (l >= 1) {
            worst = std::max(worst, rel_residual(blobs[l] * k1t - k1t * blobs[l], zero));
            worst = std::max(worst, rel_residual(blobs[l] * e1t - e1t * blobs[l], zero));
            worst = std::max(worst, rel_residual(blobs[l] * f1t - f1t * blobs[l], zero));
        }
    }
    return worst;
}

double blob_charge_q2_residual(const ModelParams& p) {
    const auto blobs = blob_generators(p);
    const ChainOperator q2 = charge_tower(2, p, ChargeRoute::closed_form);
    const CMat zero = CMat::Zero(q2.rows(), q2.cols());
    return rel_residual(blobs[0] * q2 - q2 * blobs[0], zero);
}

double hamiltonian_routes_residual(const ModelParams& p) {
    const ChainOperator hd = hamiltonian(p, HamiltonianRoute::derivative);
    const ChainOperator hb = hamiltonian(p, HamiltonianRoute::blob);
    const ChainOperator hp = hamiltonian(p, HamiltonianRoute::pauli);
    return std::max({rel_residual(hd, hb), rel_residual(hb, hp), rel_residual(hd, hp)});
}

double hamiltonian_symmetry_residual(const ModelParams& p) {
    const ChainOperator h = hamiltonian(p, HamiltonianRoute::blob);
    const ChainOperator q1 = charge_tower(1, p, ChargeRoute::closed_form);
    const CMat zero = CMat::Zero(h.rows(), h.cols());
    double worst = rel_residual(h * q1 - q1 * h, zero);
    for (const auto& u : blob_generators(p))
        worst = std::max(worst, rel_residual(u * q1 - q1 * u, zero));
    return worst;
}

double braid_residual(const ModelParams& p, int sign) {
    if (sign != 1 && sign != -1) throw Error("braid_residual: sign must be +1 or -1");
    const ModelParams ph = with_gradation(p, Gradation::homogeneous);
    const CMat tplus = extracted_leading_matrix(ph);
    const Eigen::Index chain = tplus.rows() / 2;
    const Eigen::Matrix4cd perm = permutation_4();
    const Eigen::Matrix4cd g = blob_bulk_4x4(ph) + ph.q * Eigen::Matrix4cd::Identity();
    const Eigen::Matrix4cd ginv =
        blob_bulk_4x4(ph) + (Complex(1.0) / ph.q) * Eigen::Matrix4cd::Identity();
    auto ext = [&](const Eigen::Matrix4cd& m4) {
        return kron(CMat(m4), CMat::Identity(chain, chain));
    };
    const CMat t1 = lift_aux_pair(tplus, 1, chain);
    const CMat t2 = lift_aux_pair(tplus, 2, chain);
    const CMat r_signed = ext(perm * (sign == 1 ? g : ginv));
    const CMat r_plus = ext(perm * g);
    const CMat rhat_plus = ext(g * perm);
    const CMat rhat_signed = ext((sign == 1 ? g : ginv) * perm);
    return rel_residual(r_signed * t1 * rhat_plus * t2, t2 * r_plus * t1 * rhat_signed);
}

double boundary_intertwiner_broken_m_residual(const ModelParams& p, Complex lambda,
                                              double m_shift) {
    const ModelParams shifted = make_params(p.mu, p.m + m_shift, p.zeta, p.sites, p.gradation);
    const KMatrix k = k_right(shifted, KForm::explicit_entries, Gradation::homogeneous);
    const Eigen::Matrix2cd km = k.eval(lambda);
    return rel_residual(abstract_charge(1, lambda, p) * km,
                        km * abstract_charge(1, -lambda, p));
}

// ----------------------------------------------------------- suite body

namespace {

constexpr double kCoeffTol = 1e-12;   // coefficient-exact identities
constexpr double kAlgebraTol = 1e-12; // finite algebra relations
constexpr double kHamTol = 1e-9;      // three-route Hamiltonian agreement
constexpr double kControlFloor = 1e-4;

struct Ctx {
    const SuiteConfig& cfg;
    VerificationReport& rep;
    std::string name;
    double tol;

    DetRng rng(std::uint64_t draw) const {
        return DetRng(check_stream_seed(cfg.seed, name, draw));
    }

    ReportEntry base() const {
        ReportEntry e;
        e.check_name = name;
        e.tolerance = tol;
        return e;
    }

    ReportEntry base(const ModelParams& p) const {
        ReportEntry e = base();
        e.params = CheckParams::from(p);
        return e;
    }

    template <class F> void run(ReportEntry e, F&& body) {
        try {
            body(e);
        } catch (const Error& err) {
            e.error = err.what();
            e.residual = std::numeric_limits<double>::infinity();
        }
        e.pass = e.error.empty() && e.residual < e.tolerance;
        rep.add(std::move(e));
    }

    template <class F> void run_control(ReportEntry e, F&& body) {
        try {
            body(e);
        } catch (const Error& err) {
            e.error = err.what();
            e.residual = 0.0;
        }
        // a control passes when the deliberately broken identity is LOUD
        e.pass = e.error.empty() && e.residual > e.tolerance;
        rep.add(std::move(e));
    }

    template <class F> void run_info(ReportEntry e, F&& body) {
        try {
            body(e);
        } catch (const Error& err) {
            e.error = err.what();
            e.residual = std::numeric_limits<double>::quiet_NaN();
        }
        e.tolerance = 0.0;
        e.pass = true; // informational, never gates
        rep.add(std::move(e));
    }
};

int eff_draws(const SuiteConfig& cfg) {
    const bool fixed = cfg.mu && cfg.m && cfg.zeta;
    return fixed ? 1 : std::max(1, cfg.draws);
}

bool gradation_enabled(const SuiteConfig& cfg, Gradation g) {
    return !cfg.gradation || *cfg.gradation == g;
}

bool case_enabled(const SuiteConfig& cfg, BoundaryCase c) {
    return !cfg.bcase || *cfg.bcase == c;
}

std::vector<Complex> sample_lambdas(DetRng& rng, int n) {
    std::vector<Complex> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(rng.spectral_sample());
    return out;
}

LambdaPairs sample_pairs(DetRng& rng, int n) {
    LambdaPairs out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.emplace_back(rng.spectral_sample(), rng.spectral_sample());
    return out;
}

using CheckFn = std::function<void(Ctx&)>;

struct CheckDef {
    std::string name;
    double tol; // 0 = use config tolerance
    CheckFn fn;
};

// registered below
const std::vector<CheckDef>& registry();

} // namespace

std::vector<std::string> suite_manifest() {
    std::vector<std::string> names;
    for (const auto& c : registry()) names.push_back(c.name);
    std::sort(names.begin(), names.end());
    return names;
}

VerificationReport run_suite(const SuiteConfig& cfg) {
    VerificationReport rep;
    rep.seed = cfg.seed;
    rep.suite_version = kSuiteVersion;
    for (const auto& def : registry()) {
        if (!cfg.check_filters.empty()) {
            bool keep = false;
            for (const auto& f : cfg.check_filters)
                if (def.name.find(f) != std::string::npos) keep = true;
            if (!keep) continue;
        }
        Ctx ctx{cfg, rep, def.name, def.tol > 0 ? def.tol : cfg.tolerance};
        try {
            def.fn(ctx);
        } catch (const Error& err) {
            ReportEntry e = ctx.base();
            e.error = err.what();
            e.residual = std::numeric_limits<double>::infinity();
            e.pass = false;
            rep.add(std::move(e));
        }
    }
    rep.sort_entries();
    return rep;
}

// ------------------------------------------------------------- registry

namespace {

const std::vector<CheckDef>& registry() {
    static const std::vector<CheckDef> defs = [] {
        std::vector<CheckDef> v;
        auto add = [&](std::string name, double tol, CheckFn fn) {
            v.push_back({std::move(name), tol, std::move(fn)});
        };

        add("ybe", 0, [](Ctx& c) {
            for (Gradation g : {Gradation::homogeneous, Gradation::principal}) {
                if (!gradation_enabled(c.cfg, g)) continue;
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + (g == Gradation::principal ? 100000 : 0));
                    const ModelParams p = draw_params(rng, c.cfg, 1, g);
                    const LambdaPairs pairs = sample_pairs(rng, c.cfg.lambda_samples);
                    ReportEntry e = c.base(p);
                    for (const auto& pr : pairs) {
                        e.lambda_samples.push_back(pr.first);
                        e.lambda_samples.push_back(pr.second);
                    }
                    c.run(std::move(e), [&](ReportEntry& out) {
                        out.residual = std::max(ybe_symbolic_residual(p, g),
                                                ybe_sampled_residual(p, g, pairs));
                    });
                }
            }
        });

        add("fundamental_exchange", kCoeffTol, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                c.run(c.base(p), [&](ReportEntry& out) {
                    out.residual = fundamental_exchange_residual(p);
                });
            }
        });

        add("r_blob_form", kCoeffTol, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                c.run(c.base(p),
                      [&](ReportEntry& out) { out.residual = r_blob_form_residual(p); });
            }
        });

        add("r_gauge", kCoeffTol, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                c.run(c.base(p), [&](ReportEntry& out) { out.residual = r_gauge_residual(p); });
            }
        });

        add("lax_fundamental", kCoeffTol, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                c.run(c.base(p),
                      [&](ReportEntry& out) { out.residual = lax_fundamental_residual(p); });
            }
        });

        add("lax_hat_inverse", 0, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                const auto lambdas = sample_lambdas(rng, c.cfg.lambda_samples);
                ReportEntry e = c.base(p);
                e.lambda_samples = lambdas;
                c.run(std::move(e), [&](ReportEntry& out) {
                    double worst = 0.0;
                    for (Complex l : lambdas)
                        worst = std::max(worst, lax_hat_inverse_residual(p, l));
                    out.residual = worst;
                });
            }
        });

        add("reflection_equation", 0, [](Ctx& c) {
            for (Gradation g : {Gradation::homogeneous, Gradation::principal}) {
                if (!gradation_enabled(c.cfg, g)) continue;
                for (KForm form : {KForm::blob, KForm::explicit_entries}) {
                    for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                        DetRng rng = c.rng(draw + (g == Gradation::principal ? 100000 : 0) +
                                           (form == KForm::explicit_entries ? 200000 : 0));
                        const ModelParams p = draw_params(rng, c.cfg, 1, g);
                        const LambdaPairs pairs = sample_pairs(rng, c.cfg.lambda_samples);
                        c.run(c.base(p), [&](ReportEntry& out) {
                            out.residual =
                                std::max(reflection_symbolic_residual(p, form, g),
                                         reflection_sampled_residual(p, form, g, pairs));
                        });
                    }
                }
            }
        });

        add("k_right_forms", kCoeffTol, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                c.run(c.base(p),
                      [&](ReportEntry& out) { out.residual = k_right_forms_residual(p); });
            }
        });

        add("k_right_principal_display", kCoeffTol, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                c.run(c.base(p), [&](ReportEntry& out) {
                    out.residual = k_right_principal_display_residual(p);
                });
            }
        });

        add("k_left_dual", kCoeffTol, [](Ctx& c) {
            DetRng rng = c.rng(0);
            const ModelParams p = draw_params(rng, c.cfg, 1);
            c.run(c.base(p), [&](ReportEntry& out) { out.residual = k_left_dual_residual(p); });
        });

        add("blob_relations", kAlgebraTol, [](Ctx& c) {
            const int nmax = std::max(2, std::min(6, c.cfg.max_sites));
            for (int n = 2; n <= nmax; ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p), [&](ReportEntry& out) {
                        out.residual = max_blob_relation_residual(p);
                    });
                }
            }
        });

        add("uq_relations", kAlgebraTol, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                const Complex lambda = rng.spectral_sample();
                ReportEntry e = c.base(p);
                e.lambda_samples = {lambda};
                c.run(std::move(e), [&](ReportEntry& out) {
                    out.residual = max_uq_relation_residual(lambda, p.mu);
                });
            }
        });

        add("serre_relations", kAlgebraTol, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                const Complex lambda = rng.spectral_sample();
                ReportEntry e = c.base(p);
                e.lambda_samples = {lambda};
                c.run(std::move(e), [&](ReportEntry& out) {
                    out.residual = max_serre_relation_residual(lambda, p.mu);
                });
            }
        });

        add("eval_rep_consistency", kAlgebraTol, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                const Complex lambda = rng.spectral_sample();
                ReportEntry e = c.base(p);
                e.lambda_samples = {lambda};
                c.run(std::move(e), [&](ReportEntry& out) {
                    out.residual = eval_rep_consistency_residual(p, lambda);
                });
            }
        });

        add("coproduct_coassociativity", kAlgebraTol, [](Ctx& c) {
            const int nmax = std::min(5, c.cfg.max_sites);
            for (int n = 2; n <= std::max(2, nmax); ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p), [&](ReportEntry& out) {
                        out.residual = coassociativity_residual(p);
                    });
                }
            }
        });

        add("monodromy_product", 0, [](Ctx& c) {
            for (int n = 1; n <= c.cfg.max_sites; ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    const Complex lambda = rng.spectral_sample();
                    ReportEntry e = c.base(p);
                    e.lambda_samples = {lambda};
                    c.run(std::move(e), [&](ReportEntry& out) {
                        out.residual = monodromy_product_residual(p, lambda);
                    });
                }
            }
        });

        add("monodromy_asymptotics", kCoeffTol, [](Ctx& c) {
            for (int n = 1; n <= c.cfg.max_sites; ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p), [&](ReportEntry& out) {
                        out.residual = monodromy_asymptotics_residual(p);
                    });
                }
            }
        });

        add("doubled_monodromy_reflection", 0, [](Ctx& c) {
            for (int n = 1; n <= std::min(3, c.cfg.max_sites); ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    const LambdaPairs pairs = sample_pairs(rng, std::min(5, c.cfg.lambda_samples));
                    c.run(c.base(p), [&](ReportEntry& out) {
                        double worst = 0.0;
                        for (const auto& [l1, l2] : pairs)
                            worst = std::max(worst, doubled_reflection_residual(p, l1, l2));
                        out.residual = worst;
                    });
                }
            }
        });

        add("doubled_monodromy_assembly", kCoeffTol, [](Ctx& c) {
            for (int n = 0; n <= std::min(3, c.cfg.max_sites); ++n) {
                DetRng rng = c.rng(1000 * n);
                ModelParams p = draw_params(rng, c.cfg, std::max(1, n));
                p.sites = n; // n = 0 exercises the empty chain, where Tau = K^r
                c.run(c.base(p), [&](ReportEntry& out) {
                    out.residual = doubled_assembly_residual(p);
                });
            }
        });

        add("doubled_monodromy_gauge", kCoeffTol, [](Ctx& c) {
            for (int n = 1; n <= c.cfg.max_sites; ++n) {
                DetRng rng = c.rng(1000 * n);
                const ModelParams p = draw_params(rng, c.cfg, n);
                c.run(c.base(p),
                      [&](ReportEntry& out) { out.residual = doubled_gauge_residual(p); });
            }
        });

        add("closed_transfer_commutativity", 0, [](Ctx& c) {
            for (int n = 1; n <= c.cfg.max_sites; ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p), [&](ReportEntry& out) {
                        out.residual = closed_commutativity_residual(p);
                    });
                }
            }
        });

        add("open_transfer_commutativity", 0, [](Ctx& c) {
            for (BoundaryCase bc : {BoundaryCase::I, BoundaryCase::II, BoundaryCase::III}) {
                if (!case_enabled(c.cfg, bc)) continue;
                for (int n = 1; n <= c.cfg.max_sites; ++n) {
                    for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                        DetRng rng = c.rng(draw + 1000 * n + 100000 * (int(bc) + 1));
                        const ModelParams p = draw_params(rng, c.cfg, n);
                        const LambdaPairs pairs =
                            sample_pairs(rng, std::min(5, c.cfg.lambda_samples));
                        ReportEntry e = c.base(p);
                        e.params.bcase = bc;
                        c.run(std::move(e), [&](ReportEntry& out) {
                            double worst = open_commutativity_symbolic_residual(p, bc);
                            for (const auto& [l1, l2] : pairs)
                                worst = std::max(
                                    worst, open_commutativity_sampled_residual(p, bc, l1, l2));
                            out.residual = worst;
                        });
                    }
                }
            }
        });

        add("transfer_case_forms", kCoeffTol, [](Ctx& c) {
            for (BoundaryCase bc : {BoundaryCase::I, BoundaryCase::II, BoundaryCase::III}) {
                if (!case_enabled(c.cfg, bc)) continue;
                for (int n = 1; n <= c.cfg.max_sites; ++n) {
                    DetRng rng = c.rng(1000 * n + 100000 * (int(bc) + 1));
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    ReportEntry e = c.base(p);
                    e.params.bcase = bc;
                    c.run(std::move(e), [&](ReportEntry& out) {
                        out.residual = transfer_case_form_residual(p, bc);
                    });
                }
            }
        });

        add("transfer_gauge_invariance", kCoeffTol, [](Ctx& c) {
            for (BoundaryCase bc : {BoundaryCase::I, BoundaryCase::II, BoundaryCase::III}) {
                if (!case_enabled(c.cfg, bc)) continue;
                for (int n = 1; n <= c.cfg.max_sites; ++n) {
                    DetRng rng = c.rng(1000 * n + 100000 * (int(bc) + 1));
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    ReportEntry e = c.base(p);
                    e.params.bcase = bc;
                    c.run(std::move(e), [&](ReportEntry& out) {
                        out.residual = transfer_gauge_residual(p, bc);
                    });
                }
            }
        });

        add("charge_routes", 0, [](Ctx& c) {
            for (int n = 1; n <= c.cfg.max_sites; ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p),
                          [&](ReportEntry& out) { out.residual = charge_routes_residual(p); });
                }
            }
        });

        add("charge_coproduct_variant", kCoeffTol, [](Ctx& c) {
            for (int n = 1; n <= c.cfg.max_sites; ++n) {
                DetRng rng = c.rng(1000 * n);
                const ModelParams p = draw_params(rng, c.cfg, n);
                c.run(c.base(p),
                      [&](ReportEntry& out) { out.residual = charge_variant_residual(p); });
            }
        });

        add("charge_extraction_homogeneous", 0, [](Ctx& c) {
            for (int n = 1; n <= std::min(4, c.cfg.max_sites); ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p), [&](ReportEntry& out) {
                        out.residual = charge_extraction_residual(p, Gradation::homogeneous);
                    });
                }
            }
        });

        add("charge_extraction_principal", 0, [](Ctx& c) {
            for (int n = 1; n <= std::min(4, c.cfg.max_sites); ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p), [&](ReportEntry& out) {
                        out.residual = charge_extraction_residual(p, Gradation::principal);
                    });
                }
            }
        });

        add("intertwiner_boundary", 0, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                const auto lambdas = sample_lambdas(rng, c.cfg.lambda_samples);
                ReportEntry e = c.base(p);
                e.lambda_samples = lambdas;
                c.run(std::move(e), [&](ReportEntry& out) {
                    double worst = 0.0;
                    for (Complex l : lambdas)
                        for (int i : {1, 2})
                            worst = std::max(worst, intertwiner_residual_K(i, l, p));
                    out.residual = worst;
                });
            }
        });

        add("intertwiner_lax", 0, [](Ctx& c) {
            for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                DetRng rng = c.rng(draw);
                const ModelParams p = draw_params(rng, c.cfg, 1);
                const auto lambdas = sample_lambdas(rng, std::min(8, c.cfg.lambda_samples));
                ReportEntry e = c.base(p);
                e.lambda_samples = lambdas;
                c.run(std::move(e), [&](ReportEntry& out) {
                    double worst = 0.0;
                    for (Complex l : lambdas)
                        for (GeneratorId g : {GeneratorId::e1, GeneratorId::f1, GeneratorId::k1,
                                              GeneratorId::e2, GeneratorId::f2, GeneratorId::k2})
                            worst = std::max(worst, intertwiner_residual_L(g, l, p));
                    out.residual = worst;
                });
            }
        });

        add("intertwiner_doubled", 0, [](Ctx& c) {
            for (int n = 1; n <= std::min(3, c.cfg.max_sites); ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    const auto lambdas = sample_lambdas(rng, std::min(10, c.cfg.lambda_samples));
                    ReportEntry e = c.base(p);
                    e.lambda_samples = lambdas;
                    c.run(std::move(e), [&](ReportEntry& out) {
                        double worst = 0.0;
                        for (Complex l : lambdas)
                            for (int i : {1, 2})
                                worst = std::max(worst, intertwiner_residual_T(i, l, p));
                        out.residual = worst;
                    });
                }
            }
        });

        add("exchange_relations", 0, [](Ctx& c) {
            for (int n = 1; n <= std::min(4, c.cfg.max_sites); ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    const auto lambdas = sample_lambdas(rng, std::min(10, c.cfg.lambda_samples));
                    ReportEntry e = c.base(p);
                    e.lambda_samples = lambdas;
                    c.run(std::move(e), [&](ReportEntry& out) {
                        double worst = 0.0;
                        for (Complex l : lambdas)
                            for (int i : {1, 2})
                                worst = std::max(worst, exchange_relations_residual(p, i, l));
                        out.residual = worst;
                    });
                }
            }
        });

        auto add_symmetry = [&](std::string name, BoundaryCase bc) {
            add(std::move(name), 0, [bc](Ctx& c) {
                if (!case_enabled(c.cfg, bc)) return;
                for (int n = 1; n <= std::min(5, c.cfg.max_sites); ++n) {
                    for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                        DetRng rng = c.rng(draw + 1000 * n);
                        const ModelParams p = draw_params(rng, c.cfg, n);
                        const auto lambdas =
                            sample_lambdas(rng, std::min(10, c.cfg.lambda_samples));
                        ReportEntry e = c.base(p);
                        e.params.bcase = bc;
                        e.lambda_samples = lambdas;
                        c.run(std::move(e), [&](ReportEntry& out) {
                            double worst = 0.0;
                            for (Complex l : lambdas) {
                                const SymmetryResidual r = symmetry_residual(p, bc, l);
                                worst = std::max({worst, r.vanishing, r.remainder});
                            }
                            out.residual = worst;
                        });
                    }
                }
            });
        };
        add_symmetry("symmetry_case_I", BoundaryCase::I);
        add_symmetry("symmetry_case_II", BoundaryCase::II);
        add_symmetry("symmetry_case_III", BoundaryCase::III);

        add("blob_charge_commutation", 0, [](Ctx& c) {
            for (int n = 1; n <= c.cfg.max_sites; ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p), [&](ReportEntry& out) {
                        out.residual = blob_charge_commutation_residual(p);
                    });
                }
            }
        });

        add("hamiltonian_routes", kHamTol, [](Ctx& c) {
            for (int n = 1; n <= c.cfg.max_sites; ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p), [&](ReportEntry& out) {
                        out.residual = hamiltonian_routes_residual(p);
                    });
                }
            }
        });

        add("hamiltonian_symmetry", 0, [](Ctx& c) {
            for (int n = 1; n <= c.cfg.max_sites; ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p), [&](ReportEntry& out) {
                        out.residual = hamiltonian_symmetry_residual(p);
                    });
                }
            }
        });

        add("braid_relation", 0, [](Ctx& c) {
            for (int n = 1; n <= std::min(3, c.cfg.max_sites); ++n) {
                for (int draw = 0; draw < eff_draws(c.cfg); ++draw) {
                    DetRng rng = c.rng(draw + 1000 * n);
                    const ModelParams p = draw_params(rng, c.cfg, n);
                    c.run(c.base(p), [&](ReportEntry& out) {
                        out.residual = std::max(braid_residual(p, +1), braid_residual(p, -1));
                    });
                }
            }
        });

        add("control_exchange_broken_x1", kControlFloor, [](Ctx& c) {
            DetRng rng = c.rng(0);
            const ModelParams p = draw_params(rng, c.cfg, std::min(3, c.cfg.max_sites));
            const Complex lambda = rng.spectral_sample();
            ReportEntry e = c.base(p);
            e.lambda_samples = {lambda};
            c.run_control(std::move(e), [&](ReportEntry& out) {
                out.residual = exchange_relation_broken_x_residual(p, lambda, 0.1);
            });
        });

        add("control_boundary_broken_m", kControlFloor, [](Ctx& c) {
            DetRng rng = c.rng(0);
            const ModelParams p = draw_params(rng, c.cfg, 1);
            const Complex lambda = rng.spectral_sample();
            ReportEntry e = c.base(p);
            e.lambda_samples = {lambda};
            c.run_control(std::move(e), [&](ReportEntry& out) {
                out.residual = boundary_intertwiner_broken_m_residual(p, lambda, 0.1);
            });
        });

        add("info_blob_charge_q2", 0, [](Ctx& c) {
            DetRng rng = c.rng(0);
            const ModelParams p = draw_params(rng, c.cfg, std::min(3, c.cfg.max_sites));
            c.run_info(c.base(p),
                       [&](ReportEntry& out) { out.residual = blob_charge_q2_residual(p); });
        });

        return v;
    }();
    return defs;
}

} // namespace

// --------------------------------------------- grouped (per-point) checks

std::vector<ReportEntry> check_exchange_relations(const ModelParams& p, Complex lambda,
                                                  double tol) {
    std::vector<ReportEntry> out;
    for (int i : {1, 2}) {
        ReportEntry e;
        e.check_name = "exchange_relations_q" + std::to_string(i);
        e.params = CheckParams::from(p);
        e.lambda_samples = {lambda};
        e.tolerance = tol;
        try {
            e.residual = exchange_relations_residual(p, i, lambda);
        } catch (const Error& err) {
            e.error = err.what();
            e.residual = std::numeric_limits<double>::infinity();
        }
        e.pass = e.error.empty() && e.residual < tol;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<ReportEntry> check_symmetry(const ModelParams& p, BoundaryCase c, double tol,
                                        const std::vector<Complex>& lambdas) {
    std::vector<ReportEntry> out;
    ReportEntry vanish, remain;
    vanish.check_name = "symmetry_vanishing";
    remain.check_name = "symmetry_remainder";
    for (ReportEntry* e : {&vanish, &remain}) {
        e->params = CheckParams::from(p);
        e->params.bcase = c;
        e->lambda_samples = lambdas;
        e->tolerance = tol;
    }
    try {
        double worst_v = 0.0, worst_r = 0.0;
        for (Complex l : lambdas) {
            const SymmetryResidual r = symmetry_residual(p, c, l);
            worst_v = std::max(worst_v, r.vanishing);
            worst_r = std::max(worst_r, r.remainder);
        }
        vanish.residual = worst_v;
        remain.residual = worst_r;
    } catch (const Error& err) {
        vanish.error = remain.error = err.what();
        vanish.residual = remain.residual = std::numeric_limits<double>::infinity();
    }
    vanish.pass = vanish.error.empty() && vanish.residual < tol;
    remain.pass = remain.error.empty() && remain.residual < tol;
    out.push_back(std::move(vanish));
    out.push_back(std::move(remain));
    return out;
}

std::vector<ReportEntry> check_blob_charge_commutation(const ModelParams& p, double tol) {
    ReportEntry e;
    e.check_name = "blob_charge_commutation";
    e.params = CheckParams::from(p);
    e.tolerance = tol;
    try {
        e.residual = blob_charge_commutation_residual(p);
    } catch (const Error& err) {
        e.error = err.what();
        e.residual = std::numeric_limits<double>::infinity();
    }
    e.pass = e.error.empty() && e.residual < tol;
    return {e};
}

std::vector<ReportEntry> check_hamiltonian(const ModelParams& p, double tol) {
    std::vector<ReportEntry> out;
    ReportEntry routes, symm;
    routes.check_name = "hamiltonian_routes";
    symm.check_name = "hamiltonian_symmetry";
    for (ReportEntry* e : {&routes, &symm}) {
        e->params = CheckParams::from(p);
        e->tolerance = tol;
    }
    try {
        routes.residual = hamiltonian_routes_residual(p);
    } catch (const Error& err) {
        routes.error = err.what();
        routes.residual = std::numeric_limits<double>::infinity();
    }
    try {
        symm.residual = hamiltonian_symmetry_residual(p);
    } catch (const Error& err) {
        symm.error = err.what();
        symm.residual = std::numeric_limits<double>::infinity();
    }
    routes.pass = routes.error.empty() && routes.residual < tol;
    symm.pass = symm.error.empty() && symm.residual < tol;
    out.push_back(std::move(routes));
    out.push_back(std::move(symm));
    return out;
}

std::vector<ReportEntry> check_braid_relation(const ModelParams& p, double tol) {
    std::vector<ReportEntry> out;
    for (int sign : {+1, -1}) {
        ReportEntry e;
        e.check_name = sign > 0 ? "braid_relation_plus" : "braid_relation_minus";
        e.params = CheckParams::from(p);
        e.tolerance = tol;
        try {
            e.residual = braid_residual(p, sign);
        } catch (const Error& err) {
            e.error = err.what();
            e.residual = std::numeric_limits<double>::infinity();
        }
        e.pass = e.error.empty() && e.residual < tol;
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace xxz
