#ifndef XXZ_QUANTUM_ALGEBRA_HPP
#define XXZ_QUANTUM_ALGEBRA_HPP

#include <vector>

#include "xxz/params.hpp"
#include "xxz/report.hpp"
#include "xxz/tensor.hpp"

namespace xxz {

/// Chevalley generators of the affine quantum algebra; k2 = k1^{-1} in the
/// two-dimensional evaluation representation (zero center).
enum class GeneratorId { k1, k2, e1, e2, f1, f2 };

/// Two-dimensional evaluation representation with spectral parameter
/// lambda.  The spectral dependence sits entirely on the affine pair:
///
///   k1 -> q^{sz/2}, e1 -> s+,            f1 -> s-,
///   k2 -> q^{-sz/2}, e2 -> e^{-2 lambda} s-, f2 -> e^{2 lambda} s+.
///
/// This is the composition of the evaluation homomorphism with the spin-1/2
/// representation; it is the unique assignment for which the defining
/// relations hold at every lambda and the Lax operator reduces to the
/// R-matrix.
Eigen::Matrix2cd eval_rep(GeneratorId g, Complex lambda, const ModelParams& p);

/// Index of the non-affine (1) vs affine (2) family a generator belongs to.
int generator_family(GeneratorId g);

enum class CoproductOrder {
    left_nested, // Delta^{(L)} = (id (x) Delta^{(L-1)}) Delta
    right_nested // Delta^{(L)} = (Delta^{(L-1)} (x) id) Delta
};

/// N-fold coproduct of a generator, represented on the chain with every
/// site in the lambda = 0 evaluation representation.  For y in {e, f} the
/// coproduct is Delta(y) = k^{-1} (x) y + y (x) k and group-like for k;
/// both nesting orders agree (coassociativity) and are exposed for
/// cross-checking.
ChainOperator coproduct_tower(GeneratorId g, const ModelParams& p,
                              CoproductOrder order = CoproductOrder::left_nested);

/// Boundary generator of the blob algebra in the spin representation:
/// [[-Q, 1], [1, -Q^{-1}]] acting on site 1.
Eigen::Matrix2cd blob_boundary_2x2(const ModelParams& p);

/// Bulk Temperley-Lieb generator on two adjacent sites:
/// rows (0,0,0,0), (0,-q,1,0), (0,1,-q^{-1},0), (0,0,0,0).
Eigen::Matrix4cd blob_bulk_4x4(const ModelParams& p);

/// All blob-algebra generators h(U_0), ..., h(U_{N-1}) on the N-site chain;
/// index l in the returned vector is the generator subscript.
std::vector<ChainOperator> blob_generators(const ModelParams& p);

/// Defining relations of the affine quantum algebra in the evaluation
/// representation at the given lambda, including the q-Serre relations.
VerificationReport verify_uq_relations(Complex lambda, double mu, double tolerance = 1e-12);

/// Blob-algebra relations: U_l^2 = -(q+q^{-1}) U_l, U_0^2 = -(Q+Q^{-1}) U_0,
/// U_{l+-1} U_l U_{l+-1} = U_{l+-1}, U_1 U_0 U_1 = (qQ + q^{-1}Q^{-1}) U_1,
/// and [U_l, U_k] = 0 for |l-k| != 1.
VerificationReport verify_blob_relations(const ModelParams& p, double tolerance = 1e-12);

/// Largest residual among the defining relations alone, the q-Serre
/// relations alone, and the blob relations (helpers used by the suite and
/// tests; verify_uq_relations combines the first two).
double max_uq_relation_residual(Complex lambda, double mu);
double max_serre_relation_residual(Complex lambda, double mu);
double max_blob_relation_residual(const ModelParams& p);

} // namespace xxz

#endif
