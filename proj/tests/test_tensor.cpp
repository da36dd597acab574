#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "xxz/charges.hpp"
#include "xxz/lattice.hpp"
#include "xxz/quantum_algebra.hpp"
#include "xxz/suite.hpp"
#include "xxz/tensor.hpp"

using namespace xxz;

namespace {

CMat random_matrix(DetRng& rng, Eigen::Index n) {
    CMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return m;
}

/// Characteristic-polynomial coefficients by the trace recursion
/// (Faddeev-LeVerrier), followed by Durand-Kerner root iteration: an
/// eigenvalue oracle independent of the QR-based solver.
std::vector<Complex> charpoly_roots(const CMat& a) {
    const Eigen::Index n = a.rows();
    std::vector<Complex> c(n + 1);
    c[0] = 1.0;
    CMat m = CMat::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = a * m + c[k - 1] * CMat::Identity(n, n);
        c[k] = -(a * m).trace() / double(k);
    }
    // roots of sum_k c[k] z^{n-k}
    std::vector<Complex> r(n);
    for (Eigen::Index i = 0; i < n; ++i)
        r[i] = std::pow(Complex(0.4, 0.9), double(i)); // standard seeding
    auto eval = [&](Complex z) {
        Complex v = 0.0;
        for (Eigen::Index k = 0; k <= n; ++k) v = v * z + c[k];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            Complex denom = 1.0;
            for (Eigen::Index j = 0; j < n; ++j)
                if (j != i) denom *= r[i] - r[j];
            const Complex step = eval(r[i]) / denom;
            r[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) return r;
    }
    throw ConvergenceError("charpoly_roots: Durand-Kerner did not converge in 500 iterations");
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (const Complex& x : a) {
        auto best = std::min_element(b.begin(), b.end(), [&](Complex u, Complex v) {
            return std::abs(u - x) < std::abs(v - x);
        });
        worst = std::max(worst, std::abs(*best - x));
        b.erase(best);
    }
    return worst;
}

} // namespace

TEST_CASE("kron basics") {
    CHECK(rel_residual(kron(pauli::id2(), pauli::id2()), CMat::Identity(4, 4)) == 0.0);
    CMat d = CMat::Zero(4, 4);
    d.diagonal() << 1, 1, -1, -1;
    CHECK(rel_residual(kron(pauli::z(), pauli::id2()), d) == 0.0);
}

TEST_CASE("bulk blob generator matches its displayed matrix") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 2);
    const auto blobs = blob_generators(p);
    CMat expect = CMat::Zero(4, 4);
    expect(1, 1) = -p.q;
    expect(1, 2) = 1;
    expect(2, 1) = 1;
    expect(2, 2) = -Complex(1.0) / p.q;
    CHECK(rel_residual(blobs[1], expect) < 1e-15);
}

TEST_CASE("kron associativity and bilinearity on random input") {
    DetRng rng(3);
    for (int t = 0; t < 10; ++t) {
        const CMat a = random_matrix(rng, 2), b = random_matrix(rng, 2),
                   c = random_matrix(rng, 2);
        CHECK(rel_residual(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-14);
        CHECK(rel_residual(kron(a + b, c), kron(a, c) + kron(b, c)) < 1e-14);
        const Complex s(0.3, -1.1);
        CHECK(rel_residual(kron(s * a, b), s * kron(a, b)) < 1e-14);
    }
}

TEST_CASE("embed") {
    CHECK(rel_residual(embed(pauli::z(), 1, 1), pauli::z()) == 0.0);
    CHECK(rel_residual(embed(pauli::x(), 2, 2), kron(pauli::id2(), pauli::x())) == 0.0);
    CHECK_THROWS_AS(embed(pauli::x(), 3, 2), DimensionError);
    // disjoint supports commute
    const CMat a = embed(pauli::x(), 1, 3);
    const CMat b = embed(pauli::y(), 3, 3);
    CHECK(rel_residual(a * b, b * a) < 1e-15);
}

TEST_CASE("embeds with disjoint supports commute for random one-site operators") {
    DetRng rng(5);
    for (int t = 0; t < 10; ++t) {
        const CMat a = embed(random_matrix(rng, 2), 1, 4);
        const CMat b = embed(random_matrix(rng, 2), 3, 4);
        CHECK(rel_residual(a * b, b * a) < 1e-13);
    }
}

TEST_CASE("q-deformed commutator") {
    DetRng rng(9);
    const CMat x = random_matrix(rng, 4);
    const Complex q(0.3, 0.8);
    CHECK(rel_residual(q_commutator(x, x, q), (q - Complex(1.0) / q) * x * x) < 1e-14);
    CHECK(rel_residual(q_commutator(CMat(pauli::z()), CMat(pauli::plus()), Complex(1.0)),
                       2.0 * pauli::plus()) < 1e-15);
    CHECK_THROWS_AS(q_commutator(x, x, Complex(0.0)), DegenerateParameterError);
}

TEST_CASE("boundary blob generator commutes with the site-1 charge") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 1);
    const CMat u0 = blob_generators(p)[0];
    const CMat q1 = abstract_charge(1, 0.0, p);
    CHECK(rel_residual(q_commutator(u0, q1, Complex(1.0)), CMat::Zero(2, 2)) < 1e-14);
}

TEST_CASE("relative residual metric") {
    const CMat i2 = CMat::Identity(2, 2);
    CHECK(rel_residual(i2, i2) == 0.0);
    CHECK(rel_residual(i2, 2.0 * i2) == doctest::Approx(0.5));
    DetRng rng(1);
    const CMat a = random_matrix(rng, 3), b = random_matrix(rng, 3);
    CHECK(rel_residual(a, b) == rel_residual(b, a));
    CHECK(rel_residual(a, a) < 1e-14);
}

TEST_CASE("eigenvalues of the basic 2x2 operators") {
    const auto ez = eig_general(pauli::z());
    CHECK(std::abs(ez[0] - Complex(-1.0)) < 1e-14);
    CHECK(std::abs(ez[1] - Complex(1.0)) < 1e-14);
    const auto ep = eig_general(pauli::plus());
    CHECK(std::abs(ep[0]) < 1e-14);
    CHECK(std::abs(ep[1]) < 1e-14);
}

TEST_CASE("eig_general dimension cap") {
    CHECK_THROWS_AS(eig_general(CMat::Identity(8, 8), 4), ResourceLimitError);
}

TEST_CASE("spectrum of the two-site Hamiltonian against two independent oracles") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 2);
    const CMat h = hamiltonian(p, HamiltonianRoute::blob);
    const auto vals = eig_general(h);
    // frozen values from an independent dense-solver run
    const std::vector<Complex> frozen = {
        {-1.134008832278701, 0.0},
        {-0.8866676502973505, 0.0},
        {-0.2532883452034680, 0.0},
        {0.4547069619407870, 0.0},
    };
    CHECK(multiset_distance(vals, frozen) < 1e-9);
    // characteristic-polynomial oracle
    CHECK(multiset_distance(vals, charpoly_roots(h)) < 1e-9);
}

TEST_CASE("two-level structured products agree with explicit embeddings") {
    DetRng rng(23);
    const int n_spaces = 4;
    const Eigen::Index dim = 1 << n_spaces;
    for (int t = 0; t < 6; ++t) {
        const CMat a = random_matrix(rng, dim);
        const CMat m4 = random_matrix(rng, 4);
        const int bit_hi = 3, bit_lo = 1;
        // explicit Kronecker embedding acting on spaces (0, 2): space s sits
        // at bit n_spaces - 1 - s
        CMat embedded = CMat::Zero(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r) {
            const int rh = int((r >> bit_hi) & 1), rl = int((r >> bit_lo) & 1);
            const Eigen::Index rest =
                r & ~((Eigen::Index(1) << bit_hi) | (Eigen::Index(1) << bit_lo));
            for (int ch = 0; ch < 2; ++ch)
                for (int cl = 0; cl < 2; ++cl)
                    embedded(r, rest | (Eigen::Index(ch) << bit_hi) |
                                    (Eigen::Index(cl) << bit_lo)) +=
                        m4(rh * 2 + rl, ch * 2 + cl);
        }
        CHECK(rel_residual(apply_two_level_left(a, m4, bit_hi, bit_lo), embedded * a) < 1e-12);
        CHECK(rel_residual(apply_two_level_right(a, m4, bit_hi, bit_lo), a * embedded) < 1e-12);
    }
}

TEST_CASE("one-level structured products agree with explicit embeddings") {
    DetRng rng(29);
    const Eigen::Index dim = 8;
    const CMat a = random_matrix(rng, dim);
    const CMat m2 = random_matrix(rng, 2);
    const CMat embedded = kron(kron(CMat::Identity(2, 2), m2), CMat::Identity(2, 2));
    CHECK(rel_residual(apply_one_level_left(a, m2, 1), embedded * a) < 1e-13);
    CHECK(rel_residual(apply_one_level_right(a, m2, 1), a * embedded) < 1e-13);
}

TEST_CASE("Laurent matrix evaluation commutes with products") {
    DetRng rng(31);
    const ModelParams p = make_params(0.45, 0.8, 0.15, 2);
    const OperatorMatrix t = monodromy(p);
    const OperatorMatrix th = monodromy_hat(p);
    const LaurentMatrix prod = t.mat * th.mat;
    for (int i = 0; i < 20; ++i) {
        const Complex l = rng.spectral_sample();
        CHECK(rel_residual(prod.eval(l), t.eval(l) * th.eval(l)) < 1e-10);
    }
}

TEST_CASE("Laurent matrix blocks and arithmetic") {
    const ModelParams p = make_params(0.3, 0.7, 0.2, 2);
    const OperatorMatrix tau = doubled_monodromy(p);
    const Eigen::Index d = tau.chain_dim();
    const Complex l(0.21, 0.4);
    const CMat full = tau.eval(l);
    CHECK(rel_residual(tau.block(0, 1).eval(l), full.block(0, d, d, d)) < 1e-13);
    const LaurentMatrix sum = tau.block(0, 0) + tau.block(1, 1);
    CHECK(rel_residual(sum.eval(l), full.block(0, 0, d, d) + full.block(d, d, d, d)) < 1e-13);
}
