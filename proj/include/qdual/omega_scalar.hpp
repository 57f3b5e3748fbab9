#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qdual {

using Int = std::int64_t;

/// An element of Z[w, w^-1], stored as exponent -> nonzero integer coefficient.
///
/// This one ring serves both levels of the construction: coefficients of
/// polynomials in the square-root generators Z_i live in Z[w, w^-1], and
/// coefficients in q-form live in Z[q, q^-1] with the exponent read as a
/// q-power.  The classical limit is evaluation at w = 1.
class OmegaScalar {
  public:
    OmegaScalar() = default;
    OmegaScalar(Int coefficient, Int exponent) {
        if (coefficient != 0) coeffs_[exponent] = coefficient;
    }
    static OmegaScalar zero() { return OmegaScalar(); }
    static OmegaScalar one() { return OmegaScalar(1, 0); }
    static OmegaScalar integer(Int c) { return OmegaScalar(c, 0); }
    static OmegaScalar power(Int exponent) { return OmegaScalar(1, exponent); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const {
        return coeffs_.size() == 1 && coeffs_.begin()->first == 0 && coeffs_.begin()->second == 1;
    }

    /// True when this is a single power w^m with coefficient +1.
    bool is_unit_power() const {
        return coeffs_.size() == 1 && coeffs_.begin()->second == 1;
    }
    /// Exponent of a single-term scalar; requires exactly one stored term.
    Int sole_exponent() const;

    Int coefficient(Int exponent) const {
        auto it = coeffs_.find(exponent);
        return it == coeffs_.end() ? 0 : it->second;
    }

    void add_term(Int coefficient, Int exponent);

    OmegaScalar& operator+=(const OmegaScalar& o);
    OmegaScalar& operator-=(const OmegaScalar& o);
    OmegaScalar operator+(const OmegaScalar& o) const;
    OmegaScalar operator-(const OmegaScalar& o) const;
    OmegaScalar operator-() const;
    OmegaScalar operator*(const OmegaScalar& o) const;
    OmegaScalar& operator*=(const OmegaScalar& o);

    bool operator==(const OmegaScalar& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const OmegaScalar& o) const { return coeffs_ != o.coeffs_; }
    bool operator<(const OmegaScalar& o) const { return coeffs_ < o.coeffs_; }

    /// Multiply by w^shift.
    OmegaScalar shifted(Int shift) const;

    /// The involution w -> w^-1.
    OmegaScalar bar() const;

    /// Evaluation at w = 1 (sum of integer coefficients).
    Int classical_limit() const;

    bool all_nonnegative() const;

    /// Exponents congruent mod `modulus` folded together (used with q^N = 1).
    OmegaScalar exponents_mod(Int modulus) const;

    /// Terms as (exponent, coefficient), ascending exponent.
    const std::map<Int, Int>& terms() const { return coeffs_; }

    Int min_exponent() const;
    Int max_exponent() const;

  private:
    std::map<Int, Int> coeffs_;
};

} // namespace qdual
