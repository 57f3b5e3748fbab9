#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdual/lamination.hpp"
#include "qdual/qlaurent.hpp"
#include "qdual/surface.hpp"

namespace qdual {

/// One constant-elevation arc of the link over a triangle.
struct TriangleArc {
    std::size_t tri = 0;
    std::size_t slot_in = 0;
    std::size_t slot_out = 0;
    std::size_t elevation = 0; // smaller = higher
};

/// Reference to an arc endpoint: the point where arc `arc` meets a biangle
/// side; is_in marks the entry endpoint of the arc.
struct EndpointRef {
    std::size_t arc = 0;
    bool is_in = false;
};

/// Elementary crossing between adjacent strand positions pos and pos+1
/// (0 = top).  up_over: the strand moving upward through the crossing is the
/// over-strand.
struct BiangleCrossing {
    std::size_t pos = 0;
    bool up_over = false;
};

/// Tangle in a biangle, drawn with both sides oriented so that position
/// order top-to-bottom is decreasing elevation.  Points are numbered
/// 0..l-1 on the left (top first) then l..l+r-1 on the right.
///
/// With a nonempty crossing word the diagram is a braid (l == r,
/// connectivity implied by the word).  Otherwise `match` gives the
/// crossingless connectivity and `loops` counts closed components.
struct BiangleDiagram {
    std::size_t edge = 0;
    std::vector<EndpointRef> left;  // top to bottom
    std::vector<EndpointRef> right; // top to bottom
    std::vector<BiangleCrossing> crossings;
    std::vector<std::size_t> match;
    Int loops = 0;
    bool left_is_occ0 = true; // which geometric copy of the edge is drawn left

    std::size_t points() const { return left.size() + right.size(); }
};

/// Signs at the points of a biangle diagram, indexed like its points.
using StateAssignment = std::vector<std::int8_t>;

/// A link in good position over the split triangulation: constant-elevation
/// arcs over triangles, monotone strands over biangles, and all crossings
/// concentrated in the designated ascent biangle.
struct GoodPosition {
    const IdealTriangulation* T = nullptr;
    std::vector<CurveStep> steps;      // crossings in travel order
    std::vector<TriangleArc> arcs;     // arcs[k] follows crossing k
    std::vector<BiangleDiagram> biangles;
    std::optional<std::size_t> ascent; // index into biangles

    std::string dump() const; // per-triangle arc tables, per-biangle words
};

/// Deform a weight-1 curve into good position, descending through every
/// biangle except the first-crossed one, where the final strand ascends past
/// the others, crossing beneath each of them.
GoodPosition good_position(const IdealTriangulation& T, const CurveWord& c);

/// Same, but starting from an explicit rotation of the crossing sequence
/// (used to test starting-point independence).
GoodPosition good_position_from_steps(const IdealTriangulation& T, std::vector<CurveStep> steps);

/// Crossing-free good position for a peripheral loop, via edge orientations
/// assigned while traveling around the puncture.
GoodPosition peripheral_good_position(const IdealTriangulation& T, const CurveWord& c);

/// Kauffman resolution of a biangle braid: each crossing smooths into the
/// horizontal (through) diagram and the vertical (turnback) diagram with
/// coefficients w^{+2}/w^{-2} per the skein relation with A = w^{-2}.
/// Equal diagrams are merged.
std::vector<std::pair<OmegaScalar, BiangleDiagram>> kauffman_resolve(const BiangleDiagram& d);

/// Scalar of a crossingless stated biangle diagram:
/// 0 unless through-strands carry equal states and returns carry opposite
/// states; otherwise
/// (-1)^{b-+ + c+-} w^{-(5 b-+ + b+-)} w^{5 c+- + c-+} (-w^4 - w^-4)^loops.
OmegaScalar biangle_trace(const BiangleDiagram& d, const StateAssignment& s);

/// Value of a stated triangle arc in the triangle algebra (3 variables,
/// cyclically q^2-commuting): 0 when the side that comes first
/// counterclockwise in the cut corner carries - and the other +; otherwise
/// the Weyl-ordered product of the two side generators to the given powers.
std::optional<QMonomial> triangle_arc_trace(std::size_t slot_in, std::size_t slot_out, int sign_in,
                                            int sign_out);

/// The state sum over compatible sign assignments, expressed in the edge
/// generators of the Chekhov-Fock algebra for eps = epsilon_matrix(T).
QLaurent state_sum(const GoodPosition& gp, const EpsilonPtr& eps, int threads = 1);

/// Quantum trace of a weight-1 curve.
QLaurent quantum_trace(const IdealTriangulation& T, const CurveWord& c, const EpsilonPtr& eps,
                       int threads = 1);

} // namespace qdual
