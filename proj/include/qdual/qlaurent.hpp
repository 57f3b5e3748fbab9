#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qdual/epsilon.hpp"
#include "qdual/omega_scalar.hpp"

namespace qdual {

using ExpVec = std::vector<Int>;

/// Lexicographic-descending order on exponent vectors; the canonical term
/// order used for rendering and golden files.
struct LexDescending {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        return a > b; // std::vector lexicographic compare
    }
};

/// A Laurent w-monomial w^N Z_1^{p_1} ... Z_n^{p_n} in standard form.
struct QMonomial {
    Int omega_power = 0;
    ExpVec exponents;

    QMonomial() = default;
    QMonomial(Int n, ExpVec p) : omega_power(n), exponents(std::move(p)) {}

    bool operator==(const QMonomial& o) const {
        return omega_power == o.omega_power && exponents == o.exponents;
    }
};

/// Parity class (N mod 4, exponents mod 2) of a standard-form monomial.
struct Parity {
    int q4 = 0;                 // residue of the w-power mod 4
    std::vector<int> qvec;      // residues of the exponents mod 2

    bool operator==(const Parity& o) const { return q4 == o.q4 && qvec == o.qvec; }
    bool operator<(const Parity& o) const {
        if (q4 != o.q4) return q4 < o.q4;
        return qvec < o.qvec;
    }
};

/// Noncommutative Laurent polynomial over Z[w,w^-1] in variables Z_1..Z_n
/// with Z_i Z_j = w^{2 eps(i,j)} Z_j Z_i.  Terms are kept in standard form,
/// keyed by exponent vector.  Values are immutable in spirit: every operation
/// returns a fresh polynomial.
///
/// The same representation carries the q-form (variables X_i = Z_i^2,
/// coefficients in Z[q,q^-1]); the `q_form` flag only affects rendering and
/// a few domain checks.  X-variables inherit X_i X_j = q^{2 eps(i,j)} X_j X_i.
class QLaurent {
  public:
    using TermMap = std::map<ExpVec, OmegaScalar, LexDescending>;

    QLaurent() = default;
    explicit QLaurent(EpsilonPtr eps, bool q_form = false) : eps_(std::move(eps)), q_form_(q_form) {}

    static QLaurent zero(EpsilonPtr eps, bool q_form = false) { return QLaurent(eps, q_form); }
    static QLaurent one(EpsilonPtr eps, bool q_form = false);
    static QLaurent scalar(EpsilonPtr eps, const OmegaScalar& c, bool q_form = false);
    static QLaurent generator(EpsilonPtr eps, std::size_t i, Int power = 1);
    static QLaurent monomial(EpsilonPtr eps, const QMonomial& m, bool q_form = false);

    const EpsilonPtr& eps() const { return eps_; }
    std::size_t vars() const { return eps_ ? eps_->size() : 0; }
    bool q_form() const { return q_form_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const ExpVec& p, const OmegaScalar& c);
    void add_term(const ExpVec& p, Int coefficient, Int omega_exponent);

    QLaurent operator+(const QLaurent& o) const;
    QLaurent operator-(const QLaurent& o) const;
    QLaurent operator*(const QLaurent& o) const;
    QLaurent& operator+=(const QLaurent& o);
    QLaurent& operator-=(const QLaurent& o);
    QLaurent operator-() const;
    QLaurent scaled(const OmegaScalar& c) const;

    bool operator==(const QLaurent& o) const;
    bool operator!=(const QLaurent& o) const { return !(*this == o); }

    /// Commutative evaluation at w = 1: coefficients collapse to integers.
    QLaurent classical_limit() const;

    /// All coefficients lie in Z_{>=0}[w,w^-1].
    bool coefficients_nonnegative() const;

    OmegaScalar coefficient(const ExpVec& p) const;

  private:
    EpsilonPtr eps_;
    bool q_form_ = false;
    TermMap terms_;

    void check_compatible(const QLaurent& o) const;
};

// ---- core operations on monomials and polynomials ----

/// Standard form of the product a * b: exponents add, and the w-power picks
/// up the reordering cost 2 * sum_{i>j} eps(i,j) a_i b_j.
QMonomial mono_mul(const QMonomial& a, const QMonomial& b, const EpsilonForm& eps);

/// Weyl ordering [Z^p] = w^{-sum_{i<j} eps(i,j) p_i p_j} Z^p.
QMonomial weyl_order(const ExpVec& p, const EpsilonForm& eps);

/// Two-sided inverse of a monomial.
QMonomial mono_inverse(const QMonomial& m, const EpsilonForm& eps);

/// The involutive antiautomorphism fixing each Z_i and sending w to w^-1.
QLaurent star(const QLaurent& f);

/// Unique term whose exponent vector dominates all others componentwise.
/// Throws ZeroPolynomial / NoHighestTerm.  The returned monomial carries the
/// full coefficient only when it is a single w-power; use
/// highest_term_coefficient for the scalar.
QMonomial highest_term(const QLaurent& f);
std::pair<ExpVec, OmegaScalar> highest_term_with_coefficient(const QLaurent& f);

/// Term maximal in the lexicographic order induced by `order` (a permutation
/// of 0..n-1, outermost variable first).
std::pair<ExpVec, OmegaScalar> lex_highest_term(const QLaurent& f, const std::vector<std::size_t>& order);

Parity parity_of(const QMonomial& m);
Parity parity_of_term(const ExpVec& p, Int omega_exponent);

/// Split into parity-homogeneous pieces.  The pieces sum to f.
std::map<Parity, QLaurent> parity_decompose(const QLaurent& f);

/// Rewrite w^{4k} Z^{2a} terms as q^k X^a.  Throws NotInQSubalgebra if a term
/// has parity other than (0, 0).
QLaurent to_q_form(const QLaurent& f);

/// Inverse of to_q_form: q^k X^a -> w^{4k} Z^{2a}.
QLaurent from_q_form(const QLaurent& f);

/// Coefficients reduced in Z[q]/(Phi_N) for odd N >= 1, after folding
/// exponents with q^N = 1.  Input must be in q-form.
QLaurent reduce_mod_cyclotomic(const QLaurent& f, Int N);

/// The N-th cyclotomic polynomial as integer coefficients, degree ascending.
std::vector<Int> cyclotomic_polynomial(Int N);

} // namespace qdual
