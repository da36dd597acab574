#ifndef XXZ_PARAMS_HPP
#define XXZ_PARAMS_HPP

#include <complex>
#include <string>

#include "xxz/errors.hpp"

namespace xxz {

using Complex = std::complex<double>;

enum class Gradation { homogeneous, principal };

/// Left-boundary choices for the open transfer matrix.
enum class BoundaryCase { I, II, III };

/// Construction route for the right boundary matrix.
enum class KForm { blob, explicit_entries };

std::string to_string(Gradation g);
std::string to_string(BoundaryCase c);
Gradation gradation_from_string(const std::string& s);
BoundaryCase boundary_case_from_string(const std::string& s);

/// Model parameters of the open anisotropic spin-1/2 chain with a
/// non-diagonal right boundary.
///
///   mu    anisotropy, enters through q = e^{i mu}
///   m     boundary parameter, Q = e^{i m mu}
///   zeta  second boundary parameter
///   sites chain length N
///
/// The derived boundary couplings are
///   x1 = -sinh(i m mu)   / sinh(i mu)
///   x2 = -sinh(2 i mu zeta) / sinh(i mu)
/// which is the unique normalization that makes the blob-ansatz and the
/// explicit boundary matrix coincide entry by entry.  Only these products
/// are ever needed, so no square-root branch for the individual constants
/// of the explicit parameterization has to be chosen.
struct ModelParams {
    double mu = 0.0;
    double m = 0.0;
    double zeta = 0.0;
    int sites = 1;
    Gradation gradation = Gradation::homogeneous;

    Complex q;      // e^{i mu}
    Complex q_blob; // Q = e^{i m mu}
    Complex x1;
    Complex x2;

    Complex sinh_imu() const { return (q - Complex(1.0) / q) / 2.0; }
    Complex cosh_imu() const { return (q + Complex(1.0) / q) / 2.0; }

    /// Value of the scalar weight x(lambda) of the boundary ansatz at the
    /// origin; the Hamiltonian normalization divides by it.
    Complex x_at_zero() const;
    /// d x/d lambda at the origin.
    Complex x_prime_at_zero() const;
    bool x_at_zero_vanishes(double tol = 1e-12) const;
};

ModelParams make_params(double mu, double m, double zeta, int sites,
                        Gradation gradation = Gradation::homogeneous);

} // namespace xxz

#endif
