#ifndef XXZ_CHARGES_HPP
#define XXZ_CHARGES_HPP

#include "xxz/lattice.hpp"
#include "xxz/params.hpp"
#include "xxz/quantum_algebra.hpp"
#include "xxz/tensor.hpp"

namespace xxz {

enum class ChargeRoute { closed_form, recursion, asymptotic };

std::string to_string(ChargeRoute r);

/// Boundary non-local charges on the N-site chain, together with the
/// couplings they were built with and the construction route.  q2 is only
/// populated by routes that produce it (the homogeneous asymptotics yields
/// q1 alone).
struct ChargePair {
    ChainOperator q1;
    ChainOperator q2; // empty when has_q2 is false
    Complex x1, x2;
    int sites = 0;
    ChargeRoute route = ChargeRoute::closed_form;
    bool has_q2 = false;
};

/// Boundary-algebra generator in the two-dimensional evaluation
/// representation:
///   rho(Q_i) = q^{-1/2} k_i e_i + q^{1/2} k_i f_i + x_i k_i^2 - x_i I.
/// rho(Q_1) is lambda independent; rho(Q_2) carries e^{+-2 lambda}.
Eigen::Matrix2cd abstract_charge(int which, Complex lambda, const ModelParams& p);

/// N-site charge via the closed form
///   Q_i = q^{-1/2} K_i E_i + q^{1/2} K_i F_i + x_i K_i^2 - x_i I
/// or by unrolling the coproduct Delta(Q_i) = I (x) Q_i + Q_i (x) k_i^2.
ChainOperator charge_tower(int which, const ModelParams& p,
                           ChargeRoute route = ChargeRoute::closed_form);

/// Coproduct variant without the constant subtraction: for
/// Qt_i = Q_i + x_i I the coproduct picks up an extra term,
/// Delta(Qt_i) = I (x) Qt_i + Qt_i (x) k_i^2 - x_i I (x) k_i^2.
/// Returns the tower built by that modified recursion (equal to the closed
/// form without its -x_i I term).
ChainOperator charge_tower_unsubtracted(int which, const ModelParams& p);

/// Charges read off the large-lambda asymptotics of the doubled monodromy.
/// The overall scalar of the leading coefficient is never assumed: the
/// homogeneous route normalizes the leading off-diagonal blocks to
/// (q - q^{-1})^{-1} I and returns Q1; the principal route normalizes the
/// leading antidiagonal blocks to I and returns both Q1 and Q2 from the
/// subleading diagonal.  A leading structure that is not proportional to
/// the identity in the expected blocks raises ExtractionError.
ChargePair extract_charges_asymptotic(const ModelParams& p, Gradation gradation);

/// Extraction from an already-built doubled monodromy (lets tests feed
/// corrupted inputs to exercise the error path).
ChargePair extract_charges_from(const OperatorMatrix& tau, const ModelParams& p);

/// Normalized leading coefficient matrix of the homogeneous doubled
/// monodromy on aux (x) chain:
///   [[Q1 + x1 I, (q-q^{-1})^{-1} I], [(q-q^{-1})^{-1} I, 0]].
/// This is the finite object entering the cylinder-braid relation.
CMat extracted_leading_matrix(const ModelParams& p);

/// Residual of rho_l(Q_i) K(lambda) = K(lambda) rho_{-l}(Q_i) with the
/// homogeneous right boundary matrix.
double intertwiner_residual_K(int which, Complex lambda, const ModelParams& p);

/// Residuals of the Lax intertwining relations
///   (rho_l (x) id) D'(x) L(l)    = L(l)    (rho_l (x) id) D(x)
///   (rho_{-l} (x) id) D(x) Lhat(l) = Lhat(l) (rho_{-l} (x) id) D'(x)
/// with the second factor in the lambda = 0 representation; returns the
/// worse of the two lines.
double intertwiner_residual_L(GeneratorId g, Complex lambda, const ModelParams& p);

/// Residual of the doubled-monodromy intertwining relation: with
/// O(s) = rho_{s}(Q_i) (x) I + rho_{s}(k_i^2) (x) Q_i^{(N)},
/// checks O(lambda) Tau(lambda) = Tau(lambda) O(-lambda).
double intertwiner_residual_T(int which, Complex lambda, const ModelParams& p);

} // namespace xxz

#endif
