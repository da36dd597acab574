#ifndef XXZ_LAURENT_HPP
#define XXZ_LAURENT_HPP

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "xxz/errors.hpp"

namespace xxz {

using Complex = std::complex<double>;

enum class Direction { plus_infinity, minus_infinity };

/// Finite-support Laurent polynomial in u = e^lambda with complex
/// coefficients.  All spectral-parameter dependence in the suite is stored
/// this way, so d/dlambda and large-|lambda| asymptotics are exact
/// operations instead of numerical limits.
///
/// Degrees are powers of u; evaluation at lambda returns
/// sum_n c_n e^{n lambda}.  Coefficients smaller than 1e-14 times the
/// largest one are pruned after arithmetic.
class LaurentPoly {
public:
    LaurentPoly() = default; // zero polynomial (empty support)

    static LaurentPoly constant(Complex c);
    static LaurentPoly monomial(int degree, Complex coeff = Complex(1.0));
    /// sinh(lambda + a) = (u e^a - u^-1 e^-a)/2
    static LaurentPoly sinh_shifted(Complex a);
    /// cosh(lambda + a) = (u e^a + u^-1 e^-a)/2
    static LaurentPoly cosh_shifted(Complex a);
    /// sinh(2 lambda) = (u^2 - u^-2)/2
    static LaurentPoly sinh_two_lambda();
    /// scale * e^{n lambda}
    static LaurentPoly exponential(int n, Complex scale = Complex(1.0));

    bool is_zero() const { return coeffs_.empty(); }
    Complex coeff(int degree) const;
    const std::map<int, Complex>& coeffs() const { return coeffs_; }
    void set_coeff(int degree, Complex value);

    LaurentPoly& operator+=(const LaurentPoly& other);
    LaurentPoly& operator-=(const LaurentPoly& other);
    LaurentPoly& operator*=(const LaurentPoly& other);
    LaurentPoly& operator*=(Complex s);
    LaurentPoly operator-() const;

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
    friend LaurentPoly operator*(LaurentPoly a, Complex s) { return a *= s; }
    friend LaurentPoly operator*(Complex s, LaurentPoly a) { return a *= s; }

    /// Term-wise d/dlambda: c_n -> n c_n.
    LaurentPoly derivative() const;

    Complex eval(Complex lambda) const;

    /// Highest (towards +infinity) or lowest (towards -infinity) degree with
    /// a nonzero coefficient, together with that coefficient.  The zero
    /// polynomial has no asymptotic term and raises Error.
    std::pair<int, Complex> leading(Direction dir) const;

    /// Substitute u -> scale * u^flip with flip in {+1, -1}; covers
    /// lambda -> -lambda - c style reparameterizations exactly.
    LaurentPoly substituted(int flip, Complex scale) const;

    /// Multiply by u^k.
    LaurentPoly shifted(int k) const;

    int min_degree() const; // throws Error on the zero polynomial
    int max_degree() const;
    double max_abs_coeff() const;

    void prune(double rel_tol = 1e-14);

    bool operator==(const LaurentPoly&) const = default;

private:
    std::map<int, Complex> coeffs_;
};

/// Sup over degrees of |a_n - b_n|, normalized by max(1, max|a|, max|b|).
double coeff_distance(const LaurentPoly& a, const LaurentPoly& b);

/// Laurent polynomial in two independent variables u1 = e^{lambda_1},
/// u2 = e^{lambda_2}.  Used for coefficient-exact verification of two
/// spectral parameter identities (Yang-Baxter, reflection equation,
/// transfer-matrix commutativity).
class Laurent2 {
public:
    Laurent2() = default;

    /// Lift a one-variable polynomial: u^n -> u1^{n*e1} u2^{n*e2}.
    /// (e1,e2) = (1,0) gives p(lambda_1), (1,-1) gives p(lambda_1-lambda_2), ...
    static Laurent2 lift(const LaurentPoly& p, int e1, int e2);

    Laurent2& operator+=(const Laurent2& other);
    Laurent2& operator-=(const Laurent2& other);
    Laurent2& operator*=(const Laurent2& other);
    Laurent2& operator*=(Complex s);
    friend Laurent2 operator+(Laurent2 a, const Laurent2& b) { return a += b; }
    friend Laurent2 operator-(Laurent2 a, const Laurent2& b) { return a -= b; }
    friend Laurent2 operator*(Laurent2 a, const Laurent2& b) { return a *= b; }

    const std::map<std::pair<int, int>, Complex>& coeffs() const { return coeffs_; }
    double max_abs_coeff() const;
    Complex eval(Complex lambda1, Complex lambda2) const;
    void prune(double rel_tol = 1e-14);

private:
    std::map<std::pair<int, int>, Complex> coeffs_;
};

double coeff_distance(const Laurent2& a, const Laurent2& b);

/// Dense n x n matrices over Laurent2, just enough for the symbolic
/// Yang-Baxter / reflection-equation checks.
using Laurent2Matrix = std::vector<Laurent2>; // row-major, n*n entries

Laurent2Matrix l2m_mul(int n, const Laurent2Matrix& a, const Laurent2Matrix& b);
double l2m_distance(const Laurent2Matrix& a, const Laurent2Matrix& b);

} // namespace xxz

#endif
