#ifndef XXZ_TENSOR_HPP
#define XXZ_TENSOR_HPP

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "xxz/laurent.hpp"

namespace xxz {

/// Dense complex operator on the chain space (C^2)^(x)N, or on
/// aux (x) chain when an auxiliary space is attached.  Site 1 is the
/// leftmost Kronecker factor; the auxiliary space, when present, sits to
/// the left of all sites.
using ChainOperator = Eigen::MatrixXcd;
using CMat = Eigen::MatrixXcd;

namespace pauli {
Eigen::Matrix2cd id2();
Eigen::Matrix2cd x();
Eigen::Matrix2cd y();
Eigen::Matrix2cd z();
Eigen::Matrix2cd plus();  // [[0,1],[0,0]]
Eigen::Matrix2cd minus(); // [[0,0],[1,0]]
} // namespace pauli

/// 4x4 permutation operator P(a (x) b) = b (x) a.
Eigen::Matrix4cd permutation_4();

CMat kron(const CMat& a, const CMat& b);

/// Embed an operator acting on k adjacent sites starting at first_site
/// (1-based) into the N-site chain: I^(first_site-1) (x) op (x) I^(rest).
CMat embed(const CMat& op, int first_site, int sites);

/// qfac * X Y - qfac^-1 * Y X; qfac = 1 gives the plain commutator.
CMat q_commutator(const CMat& x, const CMat& y, Complex qfac);

inline CMat commutator(const CMat& x, const CMat& y) { return q_commutator(x, y, Complex(1.0)); }

/// ||lhs - rhs||_F / max(1, ||lhs||_F, ||rhs||_F): the suite's universal
/// residual metric.  The max(1, .) floor keeps identities among near-zero
/// operators well defined.
double rel_residual(const CMat& lhs, const CMat& rhs);

inline constexpr int kEigDimCap = 1 << 10;

/// Eigenvalues of a general complex matrix, sorted by (real, imag).
std::vector<Complex> eig_general(const CMat& a, int dim_cap = kEigDimCap);

struct Eigensystem {
    std::vector<Complex> values; // sorted by (real, imag)
    CMat vectors;                // columns follow the sorted order
};

Eigensystem eig_general_full(const CMat& a, int dim_cap = kEigDimCap);

// --- structured two-level products -------------------------------------
//
// Operators of the form I (x) m (x) I acting on two binary levels of a
// 2^k-dimensional space (e.g. auxiliary bit + one site bit).  Multiplying a
// dense matrix by such a factor costs O(dim^2) instead of a full GEMM,
// which is what makes Laurent-valued monodromy products cheap.

/// Left-multiply: embed(m at bits hi,lo) * a.  Bit positions count from the
/// least significant bit of the row index; the 4x4 matrix m is indexed by
/// (hi,lo) in Kronecker order hi (x) lo.
CMat apply_two_level_left(const CMat& a, const Eigen::Matrix4cd& m, int bit_hi, int bit_lo);
CMat apply_two_level_right(const CMat& a, const Eigen::Matrix4cd& m, int bit_hi, int bit_lo);
CMat apply_one_level_left(const CMat& a, const Eigen::Matrix2cd& m, int bit);
CMat apply_one_level_right(const CMat& a, const Eigen::Matrix2cd& m, int bit);

/// Laurent-polynomial-valued factor supported on two binary levels,
/// e.g. one Lax operator acting on aux (x) site_j.
struct TwoLevelFactor {
    std::map<int, Eigen::Matrix4cd> terms; // degree -> 4x4 coefficient
    int bit_hi = 0;
    int bit_lo = 0;
};

/// Same, on a single binary level (e.g. a boundary matrix on the auxiliary
/// space, or a diagonal gauge factor).
struct OneLevelFactor {
    std::map<int, Eigen::Matrix2cd> terms;
    int bit = 0;
};

/// Dense matrix with LaurentPoly entries, stored as one dense complex
/// coefficient matrix per degree.  This is the workhorse representation for
/// monodromy-type objects: products, derivatives, evaluation and
/// leading-order extraction are all coefficient-wise.
class LaurentMatrix {
public:
    LaurentMatrix() = default;
    LaurentMatrix(Eigen::Index rows, Eigen::Index cols) : rows_(rows), cols_(cols) {}

    static LaurentMatrix identity(Eigen::Index n);
    /// Single LaurentPoly placed at entry (i, j) of a rows x cols matrix.
    static LaurentMatrix from_poly(Eigen::Index rows, Eigen::Index cols, Eigen::Index i,
                                   Eigen::Index j, const LaurentPoly& p);

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }
    bool empty() const { return terms_.empty(); }

    void add_term(int degree, const CMat& m);
    const std::map<int, CMat>& terms() const { return terms_; }
    CMat coefficient(int degree) const; // zero matrix when absent
    LaurentPoly entry(Eigen::Index i, Eigen::Index j) const;

    LaurentMatrix& operator+=(const LaurentMatrix& other);
    LaurentMatrix& operator-=(const LaurentMatrix& other);
    LaurentMatrix& operator*=(Complex s);
    friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) { return a += b; }
    friend LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) { return a -= b; }
    friend LaurentMatrix operator*(LaurentMatrix a, Complex s) { return a *= s; }
    friend LaurentMatrix operator*(Complex s, LaurentMatrix a) { return a *= s; }
    /// Full product (coefficient convolution with dense GEMMs).
    friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);

    /// Multiply every entry by a scalar Laurent polynomial.
    LaurentMatrix scaled_by(const LaurentPoly& p) const;
    /// Multiply by u^k.
    LaurentMatrix shifted(int k) const;

    LaurentMatrix applied_left(const TwoLevelFactor& f) const;  // f * this
    LaurentMatrix applied_right(const TwoLevelFactor& f) const; // this * f
    LaurentMatrix applied_left(const OneLevelFactor& f) const;
    LaurentMatrix applied_right(const OneLevelFactor& f) const;

    LaurentMatrix derivative() const;
    CMat eval(Complex lambda) const;

    LaurentMatrix block(Eigen::Index i0, Eigen::Index j0, Eigen::Index r, Eigen::Index c) const;

    int min_degree() const; // throws Error when empty
    int max_degree() const;
    /// Largest |degree| carried by any term (0 when empty).
    int degree_span() const;
    double max_abs() const;

    void prune(double rel_tol = 1e-14);

private:
    Eigen::Index rows_ = 0, cols_ = 0;
    std::map<int, CMat> terms_;
};

/// Sup over degrees of ||a_d - b_d||_F, normalized like rel_residual.
double laurent_residual(const LaurentMatrix& a, const LaurentMatrix& b);

/// max over ordered coefficient pairs (d, d') of ||[A_d, B_d']||_F,
/// normalized by max(1, max||A||, max||B||): a coefficient-exact
/// commutativity test for one-parameter Laurent families.
double commutator_residual(const LaurentMatrix& a, const LaurentMatrix& b);

} // namespace xxz

#endif
