#pragma once

#include <array>
#include <vector>

#include "qdual/lamination.hpp"
#include "qdual/qlaurent.hpp"

namespace qdual {

/// Univariate polynomial over Z, coefficients by ascending degree.
class IntPolynomial {
  public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPolynomial constant(Int k) { return IntPolynomial({k}); }
    static IntPolynomial t() { return IntPolynomial({0, 1}); }

    Int degree() const { return c_.empty() ? -1 : static_cast<Int>(c_.size()) - 1; }
    Int coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
    const std::vector<Int>& coeffs() const { return c_; }

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

    /// Substitution p(q(t)).
    IntPolynomial compose(const IntPolynomial& inner) const;

    /// Evaluate in any ring with 1, given multiplication and addition of the
    /// argument type.
    QLaurent evaluate(const QLaurent& x) const;
    Int evaluate(Int x) const;

  private:
    std::vector<Int> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

/// Trace-power polynomials: F_0 = 2, F_1 = t, F_{k+1} = F_k t - F_{k-1}.
IntPolynomial chebyshev(Int k);

/// Monic nonnegative polynomial whose coefficients c_{k,i} satisfy
/// t^k = F_k + c_{k,k-1} F_{k-1} + ... + c_{k,1} F_1 + c_{k,0}.
IntPolynomial inverse_chebyshev(Int k);

/// 2x2 matrix over commutative Laurent polynomials in Z_1..Z_n (eps = 0).
struct CommMatrix2 {
    std::array<QLaurent, 4> a; // row-major
    CommMatrix2 operator*(const CommMatrix2& o) const;
    QLaurent trace() const { return a[0] + a[3]; }
    QLaurent det() const { return a[0] * a[3] - a[1] * a[2]; }
};

/// Commutative epsilon (all zero) on n variables, for classical values.
EpsilonPtr commutative_eps(std::size_t n);

/// Left turn:  [[Z, Z], [0, Z^-1]];  right turn: [[Z, 0], [Z^-1, Z^-1]].
CommMatrix2 turn_matrix(EpsilonPtr eps0, std::size_t edge, Turn dir);

/// Ordered product of turn matrices along a curve word.
CommMatrix2 monodromy(const IdealTriangulation& T, const CurveWord& c);
CommMatrix2 monodromy_steps(std::size_t num_edges, const std::vector<CurveStep>& steps);

/// The classical canonical map: product over components of F_k(trace) for
/// nonperipheral weight k, and the k-th power of the positive eigenvalue
/// monomial Z^mu for peripheral weight k.
QLaurent classical_I(const IdealTriangulation& T, const IntegralLamination& l);

} // namespace qdual
