#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qdual/epsilon.hpp"

namespace qdual {

/// One occurrence of an edge as a side of a triangle.
struct SideRef {
    std::size_t tri = 0;
    std::size_t slot = 0; // 0..2, sides listed clockwise
    bool operator==(const SideRef& o) const { return tri == o.tri && slot == o.slot; }
};

/// Ideal triangulation of a closed punctured surface.
///
/// Sides of each triangle are listed in clockwise order for the chosen
/// orientation of the surface.  With corners numbered so that corner j sits
/// between the sides in slots j and j+1 (mod 3), the clockwise walk traverses
/// the side in slot a from corner (a+2)%3 to corner a, and gluing an edge's
/// two occurrences identifies head with tail:
///   corner(t,a) ~ corner(t',(b+2)%3) and corner(t,(a+2)%3) ~ corner(t',b).
///
/// Self-folded triangles (a triangle meeting an edge twice) are rejected.
class IdealTriangulation {
  public:
    IdealTriangulation(std::size_t num_edges,
                       std::vector<std::array<std::size_t, 3>> triangles,
                       std::vector<std::array<std::size_t, 3>> corners);

    static IdealTriangulation load_json(const std::string& path);
    static IdealTriangulation from_json_text(const std::string& text);

    std::size_t num_edges() const { return num_edges_; }
    std::size_t num_triangles() const { return triangles_.size(); }
    std::size_t num_punctures() const { return num_punctures_; }
    Int genus() const { return genus_; }

    std::size_t edge(std::size_t tri, std::size_t slot) const { return triangles_[tri][slot]; }
    const std::array<std::size_t, 3>& triangle(std::size_t t) const { return triangles_[t]; }

    /// Puncture at corner j of triangle t (corner j between slots j and j+1).
    std::size_t corner_puncture(std::size_t t, std::size_t c) const { return corners_[t][c]; }

    /// The two side occurrences of an edge, in (triangle, slot) scan order.
    const std::array<SideRef, 2>& occurrences(std::size_t e) const { return occ_[e]; }

    /// Edge ends: end 0 of edge e contains corner(t,a) for the first
    /// occurrence (t,a); end 1 contains corner(t,(a+2)%3).  Given a corner of
    /// a triangle adjacent to the edge, which end it belongs to.
    int end_of_corner(std::size_t e, std::size_t tri, std::size_t corner) const;

    /// Puncture at end 0 / end 1 of an edge.
    std::size_t end_puncture(std::size_t e, int end) const { return end_punctures_[e][end]; }

    /// Number of ends of edge e incident to puncture p (0, 1 or 2).
    Int ends_at(std::size_t e, std::size_t p) const;

    /// mu-vector of the weight-1 loop around puncture p: mu_i = ends of edge
    /// i at p.  The loop's a-coordinates are mu/2.
    std::vector<Int> peripheral_mu(std::size_t p) const;
    std::vector<std::vector<Int>> all_peripheral_mu() const;

  private:
    std::size_t num_edges_;
    std::vector<std::array<std::size_t, 3>> triangles_;
    std::vector<std::array<std::size_t, 3>> corners_;
    std::vector<std::array<SideRef, 2>> occ_;
    std::vector<std::array<std::size_t, 2>> end_punctures_;
    std::size_t num_punctures_ = 0;
    Int genus_ = 0;

    void validate();
};

/// Skew form eps(i,j) = a_ij - a_ji where a_ij counts angular sectors
/// delimited by i and j with i first counterclockwise: each corner between
/// slot a (edge i) and slot a+1 (edge j) contributes +1 to a_ij.
EpsilonPtr epsilon_matrix(const IdealTriangulation& T);

/// a-coordinates (half-integers, returned doubled: the mu-vector) of the
/// weight-1 peripheral loop around p.
std::vector<Int> peripheral_vector_doubled(const IdealTriangulation& T, std::size_t p);

/// Split ideal triangulation: one biangle per edge, sides glued to the two
/// triangle sides carrying that edge.  Biangle b-side (the "left" side of the
/// drawn strip) is the first occurrence in scan order.
struct SplitTriangulation {
    const IdealTriangulation* T;
    std::size_t num_biangles() const { return T->num_edges(); }
};

SplitTriangulation split(const IdealTriangulation& T);

} // namespace qdual
