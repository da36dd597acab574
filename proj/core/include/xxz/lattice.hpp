#ifndef XXZ_LATTICE_HPP
#define XXZ_LATTICE_HPP

#include <array>
#include <string>
#include <utility>

#include "xxz/params.hpp"
#include "xxz/tensor.hpp"

namespace xxz {

enum class Side { right, left };

/// 2x2 boundary reflection matrix with LaurentPoly entries.
struct KMatrix {
    std::array<LaurentPoly, 4> entries; // row-major
    Side side = Side::right;
    Gradation gradation = Gradation::homogeneous;
    std::string tag; // "blob" | "explicit" | "I" | "II" | "III" | "dual" | custom

    LaurentPoly& at(int i, int j) { return entries[i * 2 + j]; }
    const LaurentPoly& at(int i, int j) const { return entries[i * 2 + j]; }
    Eigen::Matrix2cd eval(Complex lambda) const;
    /// Largest |degree| over the four entries.
    int degree_span() const;
    /// One-level Laurent factor acting on the given bit of a larger space.
    OneLevelFactor as_factor(int bit) const;
};

/// 2x2 auxiliary-space matrix of chain operators with LaurentPoly entries;
/// stored as one (2 * 2^N)-dimensional Laurent matrix with the auxiliary
/// space as the top Kronecker factor.  Houses the Lax operators (N = 1),
/// the monodromy T, its inverse-built partner That, and the doubled
/// monodromy Tau = T K^r That whose blocks generate the reflection algebra.
struct OperatorMatrix {
    LaurentMatrix mat;
    Gradation gradation = Gradation::homogeneous;
    int sites = 0;

    Eigen::Index chain_dim() const { return mat.rows() / 2; }
    /// Auxiliary-space block (i, j), a chain-dimension Laurent matrix;
    /// blocks (0,0), (0,1), (1,0), (1,1) are conventionally called
    /// A1, B, C, A2.
    LaurentMatrix block(int i, int j) const;
    CMat eval(Complex lambda) const { return mat.eval(lambda); }
};

/// Open-chain transfer matrix as a chain-space Laurent matrix.
struct TransferMatrix {
    LaurentMatrix mat;
    BoundaryCase bcase = BoundaryCase::I;
    Gradation gradation = Gradation::homogeneous;
    int sites = 0;

    CMat eval(Complex lambda) const { return mat.eval(lambda); }
};

inline constexpr int kDefaultSiteCap = 10;

/// Scalar weights of the right boundary in the blob-algebra ansatz:
/// K^(r)(lambda) = x(lambda) I + y(lambda) h(U_0) with
/// x(lambda) = 2 sinh(lambda - i m mu/2 - i mu zeta) cosh(lambda - i m mu/2 + i mu zeta)
///           = sinh(2 lambda - i m mu) - sinh(2 i mu zeta),
/// y(lambda) = sinh(2 lambda).
LaurentPoly k_scalar_x(const ModelParams& p);
LaurentPoly k_scalar_y();

/// Spin-1/2 R-matrix on aux (x) site as a 4x4 Laurent matrix (sites = 1).
/// The principal-gradation form is built from its own explicit entries;
/// consistency with the diagonal gauge transform of the homogeneous form is
/// a suite check, not an identity by construction.
OperatorMatrix r_matrix(const ModelParams& p, Gradation gradation);

/// Lax operator and its inverse-reflected partner Lhat(lambda) =
/// L^{-1}(-lambda) (up to the scalar sinh^2(i mu) - sinh^2(lambda)), with
/// the quantum space in the spin-1/2 evaluation representation.  In this
/// representation L coincides with the R-matrix and Lhat swaps
/// e^{lambda} <-> e^{-lambda} on the off-diagonal entries.
std::pair<OperatorMatrix, OperatorMatrix> l_operators_fundamental(const ModelParams& p,
                                                                  Gradation gradation);

KMatrix k_right(const ModelParams& p, KForm form, Gradation gradation);

/// Diagonal left boundaries I, II, III in either gradation.
KMatrix k_left(BoundaryCase c, Gradation gradation, const ModelParams& p);

/// The reflected-transposed constructor K^l(lambda) = K(-lambda - i mu)^t,
/// used to cross-check case II against the diagonal limit of the right
/// boundary family.
KMatrix k_left_from_right(const KMatrix& k, const ModelParams& p);

/// Monodromy T = L_{0N} ... L_{01} (and That = Lhat_{01} ... Lhat_{0N}),
/// every site in the lambda = 0 evaluation representation.  `sites` < 0
/// means params.sites; sites = 0 is the empty chain (identity).
OperatorMatrix monodromy(const ModelParams& p, int sites = -1, int site_cap = kDefaultSiteCap);
OperatorMatrix monodromy_hat(const ModelParams& p, int sites = -1, int site_cap = kDefaultSiteCap);

/// Doubled monodromy Tau = T K^r That, built inside-out with structured
/// two-level products.  Gradation follows params: the principal build uses
/// the principal Lax factors and K^(r,p) = V K^(r) V.
OperatorMatrix doubled_monodromy(const ModelParams& p, int sites = -1,
                                 int site_cap = kDefaultSiteCap);

/// Weighted auxiliary-space trace sum_{i,j} (M K^l)_{ij} Tau_{ji}.
LaurentMatrix weighted_trace_aux(const OperatorMatrix& tau, const Eigen::Matrix2cd& M,
                                 const KMatrix& kl);
CMat weighted_trace_aux(const CMat& tau_at_lambda, const Eigen::Matrix2cd& M,
                        const Eigen::Matrix2cd& kl_at_lambda);

/// Trace weight matrix M of the open transfer matrix: diag(q, q^{-1}) in
/// the homogeneous gradation, the identity in the principal one.
Eigen::Matrix2cd trace_weight(const ModelParams& p, Gradation gradation);

/// Open transfer matrix t(lambda) = Tr_0 { M_0 K^l_0(lambda) Tau_0(lambda) }.
TransferMatrix transfer_matrix(const ModelParams& p, BoundaryCase c, int sites = -1,
                               int site_cap = kDefaultSiteCap);

/// Closed-chain transfer matrix Tr_0 T_0(lambda).
TransferMatrix closed_transfer_matrix(const ModelParams& p, int sites = -1,
                                      int site_cap = kDefaultSiteCap);

enum class HamiltonianRoute { derivative, blob, pauli };

/// Open-chain Hamiltonian with case-I left boundary, via one of three
/// routes that must agree:
///   derivative  exact d/dlambda of the case-I transfer matrix at 0,
///               normalized by -(sinh i mu)^{-2N+1} / (4 x(0) (q + q^{-1}));
///   blob        -1/2 sum_l h(U_l) - [sinh(i mu) y'(0) / (4 x(0))] h(U_0) + w;
///   pauli       explicit two-site + boundary-field form.
ChainOperator hamiltonian(const ModelParams& p, HamiltonianRoute route);

std::string to_string(HamiltonianRoute r);

} // namespace xxz

#endif
