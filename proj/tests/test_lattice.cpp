#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xxz/charges.hpp"
#include "xxz/lattice.hpp"
#include "xxz/suite.hpp"

using namespace xxz;

TEST_CASE("R-matrix at the origin is the permutation times sinh(i mu)") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 1);
    for (Gradation g : {Gradation::homogeneous, Gradation::principal}) {
        const OperatorMatrix r = r_matrix(p, g);
        CHECK(rel_residual(r.eval(0.0), p.sinh_imu() * CMat(permutation_4())) < 1e-14);
    }
}

TEST_CASE("R-matrix blob decomposition and gauge") {
    DetRng rng(41);
    for (int t = 0; t < 10; ++t) {
        const double mu = rng.uniform(0.1, 1.4);
        if (std::abs(std::sin(mu)) < 0.05) continue;
        const ModelParams p = make_params(mu, 0.7, 0.2, 1);
        CHECK(r_blob_form_residual(p) < 1e-12);
        CHECK(r_gauge_residual(p) < 1e-12);
    }
}

TEST_CASE("Yang-Baxter equation in both gradations") {
    DetRng rng(43);
    for (int t = 0; t < 5; ++t) {
        const double mu = rng.uniform(0.1, 1.4);
        if (std::abs(std::sin(mu)) < 0.05) continue;
        const ModelParams p = make_params(mu, 0.7, 0.2, 1);
        LambdaPairs pairs;
        for (int i = 0; i < 20; ++i)
            pairs.emplace_back(rng.spectral_sample(), rng.spectral_sample());
        for (Gradation g : {Gradation::homogeneous, Gradation::principal}) {
            CHECK(ybe_symbolic_residual(p, g) < 1e-12);
            CHECK(ybe_sampled_residual(p, g, pairs) < 1e-10);
        }
    }
}

TEST_CASE("Lax operators reduce to the R-matrix and invert as expected") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 1);
    CHECK(lax_fundamental_residual(p) < 1e-12);
    DetRng rng(47);
    for (int t = 0; t < 10; ++t) {
        const Complex l = rng.spectral_sample();
        CHECK(lax_hat_inverse_residual(p, l) < 1e-10);
        // matrix-inversion oracle: L(-l) Lhat(l) = (sinh^2(i mu) - sinh^2 l) I
        const auto [lop, lhat] = l_operators_fundamental(p, Gradation::homogeneous);
        const CMat inv_scaled = lop.eval(-l).inverse();
        const Complex scale =
            std::pow(p.sinh_imu(), 2) - std::pow(std::sinh(l), 2);
        CHECK(rel_residual(lhat.eval(l), scale * inv_scaled) < 1e-10);
    }
    CHECK(fundamental_exchange_residual(p) < 1e-12);
}

TEST_CASE("right boundary matrix forms agree under the parameter identification") {
    DetRng rng(53);
    for (int t = 0; t < 20; ++t) {
        const double mu = rng.uniform(0.1, 1.4);
        if (std::abs(std::sin(mu)) < 0.05) continue;
        const ModelParams p =
            make_params(mu, rng.uniform(0.1, 1.5), rng.uniform(-0.4, 0.4), 1);
        CHECK(k_right_forms_residual(p) < 1e-12);
        CHECK(k_right_principal_display_residual(p) < 1e-12);
    }
}

TEST_CASE("right boundary at the origin and its off-diagonal entry") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 1);
    const KMatrix k = k_right(p, KForm::blob, Gradation::homogeneous);
    CHECK(rel_residual(k.eval(0.0), p.x_at_zero() * CMat(Eigen::Matrix2cd::Identity())) <
          1e-14);
    CHECK(coeff_distance(k.at(0, 1), LaurentPoly::sinh_two_lambda()) < 1e-15);
    CHECK(coeff_distance(k.at(1, 0), LaurentPoly::sinh_two_lambda()) < 1e-15);
}

TEST_CASE("reflection equation for the right boundary") {
    DetRng rng(59);
    const ModelParams p = make_params(0.3, 0.7, 0.2, 1);
    LambdaPairs pairs;
    for (int i = 0; i < 10; ++i) pairs.emplace_back(rng.spectral_sample(), rng.spectral_sample());
    for (Gradation g : {Gradation::homogeneous, Gradation::principal}) {
        for (KForm f : {KForm::blob, KForm::explicit_entries}) {
            CHECK(reflection_symbolic_residual(p, f, g) < 1e-12);
            CHECK(reflection_sampled_residual(p, f, g, pairs) < 1e-10);
        }
    }
}

TEST_CASE("left boundaries") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 1);
    const Complex q2 = std::exp(Complex(0, 2 * p.mu));
    CHECK(rel_residual(k_left(BoundaryCase::I, Gradation::homogeneous, p).eval(0.7),
                       CMat(Eigen::Matrix2cd::Identity())) == 0.0);
    Eigen::Matrix2cd case2_at0 = Eigen::Matrix2cd::Zero();
    case2_at0(0, 0) = Complex(1.0) / q2;
    case2_at0(1, 1) = q2;
    CHECK(rel_residual(k_left(BoundaryCase::II, Gradation::homogeneous, p).eval(0.0),
                       CMat(case2_at0)) < 1e-15);
    CHECK(rel_residual(k_left(BoundaryCase::III, Gradation::principal, p).eval(0.9),
                       CMat(Eigen::Matrix2cd::Identity())) == 0.0);
    CHECK_THROWS_AS(boundary_case_from_string("IV"), Error);
    // reflected-transposed constructor reproduces case II from the diagonal
    // limit of the right boundary family
    CHECK(k_left_dual_residual(p) < 1e-14);
}

TEST_CASE("monodromy basics") {
    const ModelParams p1 = make_params(0.3, 0.7, 0.2, 1);
    const OperatorMatrix t1 = monodromy(p1);
    const auto [l, lhat] = l_operators_fundamental(p1, Gradation::homogeneous);
    CHECK(laurent_residual(t1.mat, l.mat) < 1e-14);
    CHECK_THROWS_AS(monodromy(make_params(0.3, 0.7, 0.2, 5), -1, 4), ResourceLimitError);
}

TEST_CASE("monodromy equals the explicit numeric product") {
    DetRng rng(61);
    for (int n = 1; n <= 4; ++n) {
        const ModelParams p = make_params(0.3, 0.7, 0.2, n);
        CHECK(monodromy_product_residual(p, rng.spectral_sample()) < 1e-12);
    }
}

TEST_CASE("monodromy leading coefficients carry the coproduct towers") {
    for (int n = 1; n <= 4; ++n) {
        const ModelParams p = make_params(0.3, 0.7, 0.2, n);
        CHECK(monodromy_asymptotics_residual(p) < 1e-12);
    }
}

TEST_CASE("doubled monodromy: empty chain, assembly, reflection and gauge") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 2);
    // empty chain: Tau = K^r on the auxiliary space alone
    ModelParams p0 = p;
    p0.sites = 0;
    const OperatorMatrix tau0 = doubled_monodromy(p0, 0);
    const KMatrix kr = k_right(p, KForm::blob, Gradation::homogeneous);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(coeff_distance(tau0.mat.entry(i, j), kr.at(i, j)) < 1e-14);
    CHECK(doubled_assembly_residual(p0) < 1e-13);

    for (int n = 1; n <= 3; ++n) {
        ModelParams pn = make_params(0.3, 0.7, 0.2, n);
        CHECK(doubled_assembly_residual(pn) < 1e-12);
        CHECK(doubled_gauge_residual(pn) < 1e-12);
        DetRng rng(67 + n);
        for (int t = 0; t < 5; ++t)
            CHECK(doubled_reflection_residual(pn, rng.spectral_sample(),
                                              rng.spectral_sample()) < 1e-10);
    }
}

TEST_CASE("degree bounds of constructed objects") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 3);
    CHECK(r_matrix(p, Gradation::homogeneous).mat.degree_span() <= 1);
    CHECK(k_right(p, KForm::blob, Gradation::homogeneous).degree_span() <= 2);
    CHECK(monodromy(p).mat.degree_span() <= p.sites);
    CHECK(doubled_monodromy(p).mat.degree_span() <= 2 * p.sites + 2);
    const ModelParams pp = make_params(0.3, 0.7, 0.2, 3, Gradation::principal);
    CHECK(doubled_monodromy(pp).mat.degree_span() <= 2 * p.sites + 4);
    CHECK(transfer_matrix(p, BoundaryCase::II).mat.degree_span() <= 2 * p.sites + 4);
}

TEST_CASE("transfer matrix case forms and gauge invariance") {
    for (int n = 1; n <= 3; ++n) {
        const ModelParams p = make_params(0.3, 0.7, 0.2, n);
        for (BoundaryCase c : {BoundaryCase::I, BoundaryCase::II, BoundaryCase::III}) {
            CHECK(transfer_case_form_residual(p, c) < 1e-12);
            CHECK(transfer_gauge_residual(p, c) < 1e-12);
        }
    }
}

TEST_CASE("transfer matrices commute at distinct spectral parameters") {
    DetRng rng(71);
    for (int n = 1; n <= 4; ++n) {
        const ModelParams p = make_params(0.3, 0.7, 0.2, n);
        CHECK(closed_commutativity_residual(p) < 1e-10);
        for (BoundaryCase c : {BoundaryCase::I, BoundaryCase::II, BoundaryCase::III}) {
            CHECK(open_commutativity_symbolic_residual(p, c) < 1e-10);
            CHECK(open_commutativity_sampled_residual(p, c, rng.spectral_sample(),
                                                      rng.spectral_sample()) < 1e-10);
        }
    }
}

TEST_CASE("weighted auxiliary trace") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 2);
    const OperatorMatrix tau = doubled_monodromy(p);
    const Complex l(0.3, 0.11);
    const CMat tm = tau.eval(l);
    const Eigen::Index d = tau.chain_dim();
    // unit weights: plain partial trace, the sum of diagonal blocks
    const CMat plain = weighted_trace_aux(tm, Eigen::Matrix2cd::Identity(),
                                          Eigen::Matrix2cd::Identity());
    CHECK(rel_residual(plain, CMat(tm.block(0, 0, d, d) + tm.block(d, d, d, d))) < 1e-13);
    // diag(q, q^{-1}) weights reproduce the case-I transfer matrix
    const CMat weighted =
        weighted_trace_aux(tm, trace_weight(p, Gradation::homogeneous),
                           Eigen::Matrix2cd::Identity());
    CHECK(rel_residual(weighted, transfer_matrix(p, BoundaryCase::I).eval(l)) < 1e-12);
    // case III weights reduce to e^{-lambda} A1 + e^{lambda} A2
    const CMat case3 =
        weighted_trace_aux(tm, trace_weight(p, Gradation::homogeneous),
                           k_left(BoundaryCase::III, Gradation::homogeneous, p).eval(l));
    const CMat expect = std::exp(-l) * tm.block(0, 0, d, d) + std::exp(l) * tm.block(d, d, d, d);
    CHECK(rel_residual(case3, expect) < 1e-12);
}

TEST_CASE("Hamiltonian routes agree and derivatives are exact") {
    for (int n = 1; n <= 4; ++n) {
        const ModelParams p = make_params(0.3, 0.7, 0.2, n);
        CHECK(hamiltonian_routes_residual(p) < 1e-9);
    }
    // y'(0) = 2
    CHECK(std::abs(k_scalar_y().derivative().eval(0.0) - 2.0) < 1e-15);
}

TEST_CASE("three-route agreement at a second parameter point") {
    const ModelParams p = make_params(0.52, 1.1, -0.23, 3);
    const CMat hd = hamiltonian(p, HamiltonianRoute::derivative);
    const CMat hb = hamiltonian(p, HamiltonianRoute::blob);
    const CMat hp = hamiltonian(p, HamiltonianRoute::pauli);
    CHECK(rel_residual(hd, hb) < 1e-9);
    CHECK(rel_residual(hb, hp) < 1e-10);
}

TEST_CASE("singular Hamiltonian normalizations are rejected") {
    // zeta = -m/2 zeroes x(0)
    const ModelParams bad = make_params(0.3, 0.7, -0.35, 2);
    CHECK(bad.x_at_zero_vanishes());
    CHECK_THROWS_AS(hamiltonian(bad, HamiltonianRoute::blob), SingularNormalizationError);
    try {
        hamiltonian(bad, HamiltonianRoute::derivative);
        FAIL("expected SingularNormalizationError");
    } catch (const SingularNormalizationError& err) {
        // the message names the offending parameter
        CHECK(std::string(err.what()).find("zeta") != std::string::npos);
    }
    // mu = pi/2 zeroes q + q^{-1}
    const ModelParams bad2 = make_params(std::acos(-1.0) / 2, 0.7, 0.2, 2);
    CHECK_THROWS_AS(hamiltonian(bad2, HamiltonianRoute::pauli), SingularNormalizationError);
}

TEST_CASE("Hamiltonian commutes with the site-1 boundary charge tower") {
    for (int n = 1; n <= 4; ++n) {
        const ModelParams p = make_params(0.3, 0.7, 0.2, n);
        CHECK(hamiltonian_symmetry_residual(p) < 1e-10);
    }
}
