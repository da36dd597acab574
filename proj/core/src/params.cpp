#include "xxz/params.hpp"

#include <cmath>

namespace xxz {

std::string to_string(Gradation g) {
    return g == Gradation::homogeneous ? "homogeneous" : "principal";
}

std::string to_string(BoundaryCase c) {
    switch (c) {
    case BoundaryCase::I: return "I";
    case BoundaryCase::II: return "II";
    case BoundaryCase::III: return "III";
    }
    return "?";
}

Gradation gradation_from_string(const std::string& s) {
    if (s == "homogeneous" || s == "h") return Gradation::homogeneous;
    if (s == "principal" || s == "p") return Gradation::principal;
    throw Error("unknown gradation '" + s + "' (expected homogeneous|principal)");
}

BoundaryCase boundary_case_from_string(const std::string& s) {
    if (s == "I" || s == "i" || s == "1") return BoundaryCase::I;
    if (s == "II" || s == "ii" || s == "2") return BoundaryCase::II;
    if (s == "III" || s == "iii" || s == "3") return BoundaryCase::III;
    throw Error("unknown boundary case '" + s + "' (expected I|II|III)");
}

Complex ModelParams::x_at_zero() const {
    // x(0) = sinh(-i m mu) - sinh(2 i mu zeta)
    return std::sinh(Complex(0, -m * mu)) - std::sinh(Complex(0, 2 * mu * zeta));
}

Complex ModelParams::x_prime_at_zero() const {
    // x'(0) = 2 cosh(i m mu)
    return 2.0 * std::cosh(Complex(0, m * mu));
}

bool ModelParams::x_at_zero_vanishes(double tol) const { return std::abs(x_at_zero()) < tol; }

ModelParams make_params(double mu, double m, double zeta, int sites, Gradation gradation) {
    if (sites < 1) throw DegenerateParameterError("make_params: chain length N must be >= 1");
    if (std::abs(std::sin(mu)) < 1e-12)
        throw DegenerateParameterError(
            "make_params: mu = 0 (mod pi) makes sinh(i mu) vanish and the boundary "
            "couplings x1, x2 ill-defined");
    ModelParams p;
    p.mu = mu;
    p.m = m;
    p.zeta = zeta;
    p.sites = sites;
    p.gradation = gradation;
    p.q = std::exp(Complex(0, mu));
    p.q_blob = std::exp(Complex(0, m * mu));
    const Complex siu = std::sinh(Complex(0, mu));
    p.x1 = -std::sinh(Complex(0, m * mu)) / siu;
    p.x2 = -std::sinh(Complex(0, 2 * mu * zeta)) / siu;
    return p;
}

} // namespace xxz
