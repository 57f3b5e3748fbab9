#pragma once

#include <map>
#include <string>
#include <vector>

#include "qdual/classical.hpp"
#include "qdual/lamination.hpp"
#include "qdual/qlaurent.hpp"
#include "qdual/skein.hpp"

namespace qdual {

/// Product expansion in the duality basis: finitely many laminations with
/// coefficients in Z[q,q^-1].
struct StructureConstantTable {
    std::vector<std::pair<IntegralLamination, OmegaScalar>> rows;
};

struct VerifyReport {
    bool classical_ok = false;  // w = 1 evaluation equals the turn-matrix value
    bool highest_ok = false;    // highest term is q^{-sum eps a a} X^a
    bool qform_ok = false;      // lies in the q-subalgebra
    bool star_ok = false;       // fixed by the involution
    bool positive_observed = false; // coefficient positivity (reported only)
    std::string highest_term;
    bool all_ok() const { return classical_ok && highest_ok && qform_ok && star_ok; }
};

/// Computation context for one triangulated surface: owns the epsilon form
/// and memoizes curve traces and duality images.  Not thread-safe; use one
/// engine per thread.  The `threads` knob only parallelizes the state-sum
/// enumeration and does not affect results.
class DualityEngine {
  public:
    explicit DualityEngine(const IdealTriangulation& T, int threads = 1);

    const IdealTriangulation& surface() const { return T_; }
    const EpsilonPtr& eps() const { return eps_; }
    int threads() const { return threads_; }

    /// Memoized quantum trace of a weight-1 curve.
    const QLaurent& trace_of(const CurveWord& c);

    /// The map into the square-root algebra: Weyl monomials on peripheral
    /// components, Chebyshev of the quantum trace on nonperipheral ones,
    /// multiplied over components.
    QLaurent i_omega(const IntegralLamination& l);

    /// The duality map in q-form; requires integral coordinates.
    const QLaurent& i_hat_q(const IntegralLamination& l);
    const QLaurent& i_hat_q_mu(const std::vector<Int>& mu);

    /// Classical specialization q = 1 of i_hat_q, still in X-variables.
    QLaurent i_one(const IntegralLamination& l);

    StructureConstantTable product_expand(const IntegralLamination& l, const IntegralLamination& lp);

    bool frobenius_check(const IntegralLamination& l, Int N);

    /// l' = l + a for a kernel vector a of eps; checks the shift identity
    /// and that a decomposes into peripheral loops.
    bool peripheral_shift_check(const IntegralLamination& l, const std::vector<Int>& a);

    VerifyReport verify_bundle(const IntegralLamination& l);

  private:
    const IdealTriangulation& T_;
    EpsilonPtr eps_;
    int threads_;
    std::map<CurveWord, QLaurent> trace_cache_;
    std::map<std::vector<Int>, QLaurent> dual_cache_;
};

/// Term-map equality across epsilon contexts (used to compare classical
/// values living over the commutative form with w=1 limits).
bool same_terms(const QLaurent& a, const QLaurent& b);

} // namespace qdual
