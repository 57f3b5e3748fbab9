#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdual/surface.hpp"

namespace qdual {

enum class Turn : unsigned char { Left, Right };

inline Turn flip(Turn t) { return t == Turn::Left ? Turn::Right : Turn::Left; }

/// Cyclic sequence of (edge crossed, turn taken in the triangle entered
/// after the crossing) describing a simple closed curve in minimal position.
/// Left means the curve exits through the clockwise successor of the side it
/// entered; Right through the clockwise predecessor.
struct CurveStep {
    std::size_t edge;
    Turn turn;
    bool operator==(const CurveStep& o) const { return edge == o.edge && turn == o.turn; }
    bool operator<(const CurveStep& o) const {
        if (edge != o.edge) return edge < o.edge;
        return turn < o.turn;
    }
};

class CurveWord {
  public:
    CurveWord() = default;
    /// Validates traceability and minimality, then stores the canonical
    /// rotation/reflection representative.
    CurveWord(const IdealTriangulation& T, std::vector<CurveStep> steps);

    const std::vector<CurveStep>& steps() const { return steps_; }
    std::size_t length() const { return steps_.size(); }

    /// Crossing counts per edge.
    std::vector<Int> mu(const IdealTriangulation& T) const;

    bool operator==(const CurveWord& o) const { return steps_ == o.steps_; }
    bool operator<(const CurveWord& o) const { return steps_ < o.steps_; }

    std::string to_string() const; // e.g. "2L,3R" (edges 1-indexed)

  private:
    std::vector<CurveStep> steps_;
};

/// The traced path of a curve word through the triangulation: for each step
/// k, the triangle entered after crossing edge_k and the entry/exit slots.
struct TracedStep {
    std::size_t tri;
    std::size_t slot_in;
    std::size_t slot_out;
};
std::vector<TracedStep> trace_word(const IdealTriangulation& T, const std::vector<CurveStep>& steps);

/// Normal position of each crossing along its edge, indexed along the first
/// occurrence's side direction.  Requires the word of a weight-1 curve in
/// minimal position (its own normal form); throws DomainError otherwise.
std::vector<Int> step_positions(const IdealTriangulation& T, const std::vector<CurveStep>& steps);

/// All turns equal; returns the encircled puncture if so.
std::optional<std::size_t> is_peripheral(const IdealTriangulation& T, const CurveWord& c);

struct Component {
    CurveWord curve;
    Int weight = 0;
    bool peripheral = false;
    std::size_t puncture = 0; // meaningful when peripheral
};

/// Weighted multicurve in canonical form: components pairwise distinct,
/// ordered lex by coordinate vector, weights nonzero, negative weights only
/// on peripheral components.
class IntegralLamination {
  public:
    IntegralLamination() = default;
    IntegralLamination(const IdealTriangulation& T, std::vector<Component> comps);

    const std::vector<Component>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }

    /// Doubled coordinates: mu_i = 2 a_i = total signed crossing weight.
    const std::vector<Int>& mu() const { return mu_; }

    bool integral_coords() const; // all a_i integers, i.e. mu even

    bool operator==(const IntegralLamination& o) const { return mu_ == o.mu_; }
    bool operator<(const IntegralLamination& o) const { return mu_ < o.mu_; }

  private:
    std::vector<Component> comps_;
    std::vector<Int> mu_;
};

/// Doubled a-coordinates of a lamination (exact, no rationals).
std::vector<Int> coords_doubled(const IdealTriangulation& T, const IntegralLamination& l);

/// Inverse of coords on doubled coordinates: peel peripheral components by
/// corner minima, then trace the remaining normal multicurve.  Throws
/// NonRealizable on corner-parity violations.
IntegralLamination from_coords_doubled(const IdealTriangulation& T, const std::vector<Int>& mu);

/// Merge homotopic curves, drop zero weights, forbid negative nonperipheral
/// weights, order canonically.  Cross-checks disjoint realizability through
/// the coordinate bijection.
IntegralLamination canonical_decompose(const IdealTriangulation& T,
                                       const std::vector<std::pair<CurveWord, Int>>& curves);

IntegralLamination module_add(const IdealTriangulation& T, const IntegralLamination& a,
                              const IntegralLamination& b);

/// The empty lamination.
IntegralLamination empty_lamination(const IdealTriangulation& T);

/// Lamination consisting of the weight-k loop around puncture p.
IntegralLamination peripheral_lamination(const IdealTriangulation& T, std::size_t p, Int k);

/// Word of the weight-1 loop around puncture p (uniform turns).
CurveWord peripheral_word(const IdealTriangulation& T, std::size_t p);

} // namespace qdual
