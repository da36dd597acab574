#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xxz/charges.hpp"
#include "xxz/suite.hpp"

using namespace xxz;

TEST_CASE("site generator of the boundary algebra") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 1);
    Eigen::Matrix2cd expect;
    expect << p.x1 * (p.q - 1.0), 1.0, 1.0, p.x1 * (1.0 / p.q - 1.0);
    CHECK(rel_residual(abstract_charge(1, 0.0, p), expect) < 1e-14);
    // lambda independent
    CHECK(rel_residual(abstract_charge(1, Complex(0.8, -0.4), p), expect) < 1e-14);

    // second generator at the origin, direct substitution
    Eigen::Matrix2cd expect2;
    expect2 << p.x2 * (1.0 / p.q - 1.0), 1.0, 1.0, p.x2 * (p.q - 1.0);
    CHECK(rel_residual(abstract_charge(2, 0.0, p), expect2) < 1e-14);
    // spectral dependence rides on the corners
    const Complex l(0.5, 0.1);
    const Eigen::Matrix2cd q2l = abstract_charge(2, l, p);
    CHECK(std::abs(q2l(0, 1) - std::exp(2.0 * l)) < 1e-14);
    CHECK(std::abs(q2l(1, 0) - std::exp(-2.0 * l)) < 1e-14);
}

TEST_CASE("vanishing coupling turns the site generator into sigma-x") {
    const ModelParams p = make_params(0.3, 0.0, 0.2, 1);
    CHECK(rel_residual(abstract_charge(1, 0.3, p), CMat(pauli::x())) < 1e-14);
}

TEST_CASE("tower routes coincide") {
    for (int n = 1; n <= 4; ++n) {
        const ModelParams p = make_params(0.3, 0.7, 0.2, n);
        CHECK(charge_routes_residual(p) < 1e-12);
    }
    // single site reduces to the abstract generator
    const ModelParams p1 = make_params(0.3, 0.7, 0.2, 1);
    CHECK(rel_residual(charge_tower(1, p1), CMat(abstract_charge(1, 0.0, p1))) < 1e-14);
    CHECK(rel_residual(charge_tower(2, p1), CMat(abstract_charge(2, 0.0, p1))) < 1e-14);
}

TEST_CASE("two-site tower expanded by hand") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 2);
    const Eigen::Matrix2cd site = abstract_charge(1, 0.0, p);
    const Eigen::Matrix2cd k2 =
        eval_rep(GeneratorId::k1, 0.0, p) * eval_rep(GeneratorId::k1, 0.0, p);
    const CMat byhand = kron(CMat(Eigen::Matrix2cd::Identity()), CMat(site)) +
                        kron(CMat(site), CMat(k2));
    CHECK(rel_residual(charge_tower(1, p, ChargeRoute::closed_form), byhand) < 1e-13);
}

TEST_CASE("unsubtracted variant picks up the compensating term") {
    for (int n = 1; n <= 3; ++n) {
        const ModelParams p = make_params(0.3, 0.7, 0.2, n);
        CHECK(charge_variant_residual(p) < 1e-12);
    }
}

TEST_CASE("asymptotic extraction matches the towers in both gradations") {
    for (int n = 1; n <= 4; ++n) {
        const ModelParams p = make_params(0.3, 0.7, 0.2, n);
        const ChargePair hom = extract_charges_asymptotic(p, Gradation::homogeneous);
        CHECK(!hom.has_q2);
        CHECK(rel_residual(hom.q1, charge_tower(1, p)) < 1e-10);
        const ChargePair pri = extract_charges_asymptotic(p, Gradation::principal);
        REQUIRE(pri.has_q2);
        CHECK(rel_residual(pri.q1, charge_tower(1, p)) < 1e-10);
        CHECK(rel_residual(pri.q2, charge_tower(2, p)) < 1e-10);
    }
}

TEST_CASE("extraction rejects structurally broken input") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 2);
    OperatorMatrix tau = doubled_monodromy(p);
    // corrupt the leading coefficient so the off-diagonal block is no longer
    // proportional to the identity
    CMat delta = CMat::Zero(tau.mat.rows(), tau.mat.cols());
    delta(0, tau.chain_dim()) = 0.3;
    tau.mat.add_term(tau.mat.max_degree(), delta);
    CHECK_THROWS_AS(extract_charges_from(tau, p), ExtractionError);
}

TEST_CASE("extracted leading matrix has the closed block structure") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 2);
    const CMat tplus = extracted_leading_matrix(p);
    const Eigen::Index d = tplus.rows() / 2;
    const Complex qm = p.q - Complex(1.0) / p.q;
    CHECK(rel_residual(tplus.block(0, d, d, d),
                       CMat((Complex(1.0) / qm) * CMat::Identity(d, d))) < 1e-12);
    CHECK(tplus.block(d, d, d, d).norm() < 1e-12);
    CHECK(rel_residual(tplus.block(0, 0, d, d),
                       CMat(charge_tower(1, p) + p.x1 * CMat::Identity(d, d))) < 1e-10);
}

TEST_CASE("boundary intertwiner") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 1);
    DetRng rng(83);
    for (int t = 0; t < 20; ++t) {
        const Complex l = rng.spectral_sample();
        CHECK(intertwiner_residual_K(1, l, p) < 1e-10);
        CHECK(intertwiner_residual_K(2, l, p) < 1e-10);
    }
    // sensitivity control: shifting m on one side only must be loud
    CHECK(boundary_intertwiner_broken_m_residual(p, Complex(0.4, 0.2), 0.1) > 1e-6);
}

TEST_CASE("Lax intertwiner for all six generators") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 1);
    DetRng rng(89);
    for (int t = 0; t < 10; ++t) {
        const Complex l = rng.spectral_sample();
        for (GeneratorId g : {GeneratorId::e1, GeneratorId::f1, GeneratorId::k1,
                              GeneratorId::e2, GeneratorId::f2, GeneratorId::k2})
            CHECK(intertwiner_residual_L(g, l, p) < 1e-10);
    }
    // squared diagonal generator in the representation
    Eigen::Matrix2cd qz = Eigen::Matrix2cd::Zero();
    qz(0, 0) = p.q;
    qz(1, 1) = Complex(1.0) / p.q;
    const Eigen::Matrix2cd k1 = eval_rep(GeneratorId::k1, 0.7, p);
    CHECK(rel_residual(k1 * k1, qz) < 1e-14);
}

TEST_CASE("doubled-monodromy intertwiner") {
    DetRng rng(97);
    for (int n = 1; n <= 3; ++n) {
        const ModelParams p = make_params(0.3, 0.7, 0.2, n);
        for (int t = 0; t < (n == 2 ? 10 : 4); ++t) {
            const Complex l = rng.spectral_sample();
            CHECK(intertwiner_residual_T(1, l, p) < 1e-10);
            CHECK(intertwiner_residual_T(2, l, p) < 1e-10);
        }
    }
}

TEST_CASE("route independence across random parameter draws") {
    DetRng rng(101);
    for (int t = 0; t < 10; ++t) {
        const double mu = rng.uniform(0.1, 1.4);
        if (std::abs(std::sin(mu)) < 0.05) continue;
        const ModelParams p =
            make_params(mu, rng.uniform(0.1, 1.5), rng.uniform(-0.4, 0.4), 3);
        CHECK(charge_routes_residual(p) < 1e-11);
        CHECK(charge_extraction_residual(p, Gradation::homogeneous) < 1e-10);
        CHECK(charge_extraction_residual(p, Gradation::principal) < 1e-10);
    }
}
