#include "qdual/skein.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

namespace qdual {

namespace {

// Local commutation exponent of the triangle algebra: consecutive sides in
// clockwise order w^2-commute, eps(a, a+1 mod 3) = +1.
inline Int eps_local(std::size_t i, std::size_t j) {
    if (j == (i + 1) % 3) return 1;
    if (i == (j + 1) % 3) return -1;
    return 0;
}

// Append Z_{(tri,slot)}^{power} to a running standard-form monomial in the
// tensor product of triangle algebras.  Slots of distinct triangles commute,
// so the reordering phase only involves the two later slots of the same
// triangle.
inline void append_generator(std::vector<Int>& exps, Int& phase, std::size_t tri, std::size_t slot,
                             Int power) {
    if (power == 0) return;
    const std::size_t base = 3 * tri;
    switch (slot) {
        case 0: phase += 2 * power * (-exps[base + 1] + exps[base + 2]); break;
        case 1: phase += 2 * power * (-exps[base + 2]); break;
        default: break;
    }
    exps[base + slot] += power;
}

} // namespace

std::optional<QMonomial> triangle_arc_trace(std::size_t slot_in, std::size_t slot_out, int sign_in,
                                            int sign_out) {
    std::size_t first, second;
    int sf, ss;
    if (slot_out == (slot_in + 1) % 3) {
        first = slot_in;
        second = slot_out;
        sf = sign_in;
        ss = sign_out;
    } else if (slot_out == (slot_in + 2) % 3) {
        first = slot_out;
        second = slot_in;
        sf = sign_out;
        ss = sign_in;
    } else {
        throw DomainError("triangle arc must join two distinct sides");
    }
    if (sf == -1 && ss == +1) return std::nullopt;
    QMonomial m;
    m.exponents.assign(3, 0);
    m.exponents[first] = sf;
    m.exponents[second] = ss;
    m.omega_power = -static_cast<Int>(sf) * ss;
    if (first > second) m.omega_power += 2 * static_cast<Int>(sf) * ss;
    return m;
}

// ---- good position ----

namespace {

struct EndpointKey {
    EndpointRef ref;
    std::size_t key; // elevation: smaller = higher
};

// Crossingless biangle: both sides sorted by elevation key, strands matched
// explicitly.  The drawn left side is the second occurrence of the edge (the
// side whose triangle lies left when walking against the first occurrence's
// clockwise direction).
BiangleDiagram make_biangle(const IdealTriangulation& T, std::size_t edge,
                            std::vector<std::pair<EndpointKey, SideRef>> endpoints,
                            const std::vector<std::pair<std::size_t, std::size_t>>& strands) {
    BiangleDiagram d;
    d.edge = edge;
    SideRef left_side = T.occurrences(edge)[1];
    d.left_is_occ0 = false;

    std::vector<EndpointKey> left, right;
    for (const auto& [ek, side] : endpoints) {
        if (side == left_side)
            left.push_back(ek);
        else
            right.push_back(ek);
    }
    auto by_key = [](const EndpointKey& a, const EndpointKey& b) { return a.key < b.key; };
    std::sort(left.begin(), left.end(), by_key);
    std::sort(right.begin(), right.end(), by_key);
    for (const auto& e : left) d.left.push_back(e.ref);
    for (const auto& e : right) d.right.push_back(e.ref);

    auto locate = [&](const EndpointRef& r) -> std::size_t {
        for (std::size_t i = 0; i < d.left.size(); ++i)
            if (d.left[i].arc == r.arc && d.left[i].is_in == r.is_in) return i;
        for (std::size_t i = 0; i < d.right.size(); ++i)
            if (d.right[i].arc == r.arc && d.right[i].is_in == r.is_in) return d.left.size() + i;
        throw InternalError("biangle endpoint not found");
    };

    d.match.assign(d.points(), 0);
    for (const auto& [u, v] : strands) {
        std::size_t a = locate({u, false}); // from-endpoint: arc u's exit
        std::size_t b = locate({v, true});  // to-endpoint: arc v's entry
        d.match[a] = b;
        d.match[b] = a;
    }
    return d;
}

GoodPosition build_good_position(const IdealTriangulation& T, std::vector<CurveStep> steps) {
    auto traced = trace_word(T, steps);
    std::vector<Int> vpos = step_positions(T, steps);
    const std::size_t s = steps.size();
    GoodPosition gp;
    gp.T = &T;
    gp.steps = steps;
    gp.arcs.resize(s);
    for (std::size_t k = 0; k < s; ++k)
        gp.arcs[k] = {traced[k].tri, traced[k].slot_in, traced[k].slot_out, k};

    const std::size_t ascent_edge = steps[0].edge;
    std::map<std::size_t, std::vector<std::size_t>> passages;
    for (std::size_t k = 0; k < s; ++k) passages[steps[k].edge].push_back(k);

    for (const auto& [e, ks] : passages) {
        bool is_ascent = (e == ascent_edge);
        if (is_ascent && ks.size() > 1) {
            // The final strand ascends past the descending ones; it crosses
            // each of them once, passing over exactly when its crossing
            // point precedes theirs along the edge.
            BiangleDiagram d;
            d.edge = e;
            d.left_is_occ0 = false;
            SideRef left_side = T.occurrences(e)[1];
            const std::size_t r = ks.size();
            std::vector<std::size_t> desc(ks.begin() + 1, ks.end()); // band order
            SideRef asc_from{gp.arcs[s - 1].tri, gp.arcs[s - 1].slot_out};
            bool asc_enters_left = (asc_from == left_side);

            auto left_ep = [&](std::size_t k) -> EndpointRef {
                std::size_t prev = (k + s - 1) % s;
                SideRef from_side{gp.arcs[prev].tri, gp.arcs[prev].slot_out};
                return from_side == left_side ? EndpointRef{prev, false} : EndpointRef{k, true};
            };
            auto right_ep = [&](std::size_t k) -> EndpointRef {
                std::size_t prev = (k + s - 1) % s;
                SideRef from_side{gp.arcs[prev].tri, gp.arcs[prev].slot_out};
                return from_side == left_side ? EndpointRef{k, true} : EndpointRef{prev, false};
            };

            if (asc_enters_left) {
                // ascending strand from bottom-left to top-right
                for (std::size_t j = 0; j < r - 1; ++j) d.left.push_back(left_ep(desc[j]));
                d.left.push_back(left_ep(0));
                d.right.push_back(right_ep(0));
                for (std::size_t j = 0; j < r - 1; ++j) d.right.push_back(right_ep(desc[j]));
                for (std::size_t p = r - 1; p-- > 0;)
                    d.crossings.push_back({p, vpos[0] < vpos[desc[p]]});
            } else {
                // ascending strand from top-left to bottom-right
                d.left.push_back(left_ep(0));
                for (std::size_t j = 0; j < r - 1; ++j) d.left.push_back(left_ep(desc[j]));
                for (std::size_t j = 0; j < r - 1; ++j) d.right.push_back(right_ep(desc[j]));
                d.right.push_back(right_ep(0));
                for (std::size_t j = 0; j + 1 < r; ++j)
                    d.crossings.push_back({j, vpos[0] > vpos[desc[j]]});
            }
            gp.biangles.push_back(std::move(d));
            gp.ascent = gp.biangles.size() - 1;
        } else {
            std::vector<std::pair<EndpointKey, SideRef>> endpoints;
            std::vector<std::pair<std::size_t, std::size_t>> strands;
            for (std::size_t k : ks) {
                std::size_t prev = (k + s - 1) % s;
                SideRef from_side{gp.arcs[prev].tri, gp.arcs[prev].slot_out};
                SideRef to_side{gp.arcs[k].tri, gp.arcs[k].slot_in};
                endpoints.push_back({{{prev, false}, gp.arcs[prev].elevation}, from_side});
                endpoints.push_back({{{k, true}, gp.arcs[k].elevation}, to_side});
                strands.push_back({prev, k});
            }
            gp.biangles.push_back(make_biangle(T, e, std::move(endpoints), strands));
            if (is_ascent) gp.ascent = gp.biangles.size() - 1;
        }
    }
    return gp;
}

} // namespace

GoodPosition good_position_from_steps(const IdealTriangulation& T, std::vector<CurveStep> steps) {
    return build_good_position(T, std::move(steps));
}

GoodPosition good_position(const IdealTriangulation& T, const CurveWord& c) {
    return build_good_position(T, c.steps());
}

GoodPosition peripheral_good_position(const IdealTriangulation& T, const CurveWord& c) {
    const auto& w = c.steps();
    for (const auto& st : w)
        if (st.turn != w[0].turn) throw NotPeripheral("curve word does not turn uniformly");
    auto traced = trace_word(T, w);
    const std::size_t s = w.size();

    // Corner cut by each arc, and the edge end each crossing is near.
    std::vector<std::size_t> corner(s);
    std::vector<int> near_end(s);
    for (std::size_t k = 0; k < s; ++k) {
        corner[k] = (w[k].turn == Turn::Left) ? traced[k].slot_in : traced[k].slot_out;
        near_end[k] = T.end_of_corner(w[k].edge, traced[k].tri, corner[k]);
    }

    std::vector<std::vector<std::size_t>> tri_arcs(T.num_triangles());
    for (std::size_t k = 0; k < s; ++k) tri_arcs[traced[k].tri].push_back(k);

    for (std::size_t k0 = 0; k0 < s; ++k0) {
        // Orient relevant edges while traveling from arc k0.
        std::vector<int> head(T.num_edges(), -1);
        for (std::size_t i = 0; i < s; ++i) {
            std::size_t k = (k0 + i) % s;
            if (head[w[k].edge] < 0) head[w[k].edge] = near_end[k];
        }

        // Per-triangle elevation constraints: on each side the arc cutting
        // the corner at the edge's head end lies above the other one.
        std::vector<std::size_t> elevation(s, 0);
        bool ok = true;
        for (std::size_t t = 0; t < T.num_triangles() && ok; ++t) {
            const auto& arcs = tri_arcs[t];
            if (arcs.size() <= 1) continue;
            std::vector<std::pair<std::size_t, std::size_t>> above; // (upper arc, lower arc)
            for (std::size_t a = 0; a < 3; ++a) {
                std::size_t upper = s, lower = s;
                for (std::size_t k : arcs) {
                    if (traced[k].slot_in != a && traced[k].slot_out != a) continue;
                    std::size_t e = T.edge(t, a);
                    bool cuts_head = (T.end_of_corner(e, t, corner[k]) == head[e]);
                    (cuts_head ? upper : lower) = k;
                }
                if (upper < s && lower < s) above.push_back({upper, lower});
            }
            // Kahn topological sort, smallest arc index first.
            std::map<std::size_t, std::size_t> indeg;
            for (std::size_t k : arcs) indeg[k] = 0;
            for (auto [u, l] : above) ++indeg[l];
            std::vector<std::size_t> order;
            while (order.size() < arcs.size()) {
                std::size_t pick = s;
                for (auto& [k, d] : indeg)
                    if (d == 0 && k < pick) pick = k;
                if (pick == s) {
                    ok = false; // cyclically oriented triangle
                    break;
                }
                order.push_back(pick);
                indeg.erase(pick);
                for (auto [u, l] : above)
                    if (u == pick) --indeg[l];
            }
            for (std::size_t r = 0; r < order.size(); ++r) elevation[order[r]] = r;
        }
        if (!ok) continue;

        GoodPosition gp;
        gp.T = &T;
        gp.steps = w;
        gp.arcs.resize(s);
        for (std::size_t k = 0; k < s; ++k)
            gp.arcs[k] = {traced[k].tri, traced[k].slot_in, traced[k].slot_out, elevation[k]};

        std::map<std::size_t, std::vector<std::size_t>> passages;
        for (std::size_t k = 0; k < s; ++k) passages[w[k].edge].push_back(k);
        for (const auto& [e, ks] : passages) {
            std::vector<std::pair<EndpointKey, SideRef>> endpoints;
            std::vector<std::pair<std::size_t, std::size_t>> strands;
            for (std::size_t k : ks) {
                std::size_t prev = (k + s - 1) % s;
                SideRef from_side{gp.arcs[prev].tri, gp.arcs[prev].slot_out};
                SideRef to_side{gp.arcs[k].tri, gp.arcs[k].slot_in};
                endpoints.push_back({{{prev, false}, gp.arcs[prev].elevation}, from_side});
                endpoints.push_back({{{k, true}, gp.arcs[k].elevation}, to_side});
                strands.push_back({prev, k});
            }
            BiangleDiagram d = make_biangle(T, e, std::move(endpoints), strands);
            // The orientation algorithm must have produced a crossingless
            // position: the strand matching is order-preserving.
            for (std::size_t i = 0; i < d.left.size(); ++i)
                if (d.match[i] != d.left.size() + i)
                    throw InternalError("peripheral good position has a crossing");
            gp.biangles.push_back(std::move(d));
        }
        return gp;
    }
    throw InternalError("no starting point yields a crossing-free peripheral position");
}

std::string GoodPosition::dump() const {
    std::ostringstream os;
    os << "arcs (triangle slot_in->slot_out elevation):\n";
    for (std::size_t k = 0; k < arcs.size(); ++k)
        os << "  arc " << k << ": t" << arcs[k].tri << " " << arcs[k].slot_in << "->"
           << arcs[k].slot_out << " elev " << arcs[k].elevation << "\n";
    for (const auto& b : biangles) {
        os << "biangle edge " << (b.edge + 1) << (b.left_is_occ0 ? "" : " (mirrored)") << ": left[";
        for (std::size_t i = 0; i < b.left.size(); ++i)
            os << (i ? " " : "") << b.left[i].arc << (b.left[i].is_in ? "i" : "o");
        os << "] right[";
        for (std::size_t i = 0; i < b.right.size(); ++i)
            os << (i ? " " : "") << b.right[i].arc << (b.right[i].is_in ? "i" : "o");
        os << "]";
        if (!b.crossings.empty()) {
            os << " braid";
            for (const auto& cr : b.crossings) os << " s" << cr.pos << (cr.up_over ? "+" : "-");
        }
        os << "\n";
    }
    return os.str();
}

// ---- Kauffman resolution ----

std::vector<std::pair<OmegaScalar, BiangleDiagram>> kauffman_resolve(const BiangleDiagram& d) {
    if (d.crossings.empty()) return {{OmegaScalar::one(), d}};
    if (d.left.size() != d.right.size())
        throw InternalError("crossing word on a non-braid diagram");
    const std::size_t n = d.left.size();
    const std::size_t nc = d.crossings.size();

    std::map<std::pair<std::vector<std::size_t>, Int>, OmegaScalar> merged;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nc); ++mask) {
        // links over ids: 0..n-1 left points, n..2n-1 frontier slots
        std::vector<std::size_t> link(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            link[i] = n + i;
            link[n + i] = i;
        }
        Int loops = 0;
        Int shift = 0;
        for (std::size_t c = 0; c < nc; ++c) {
            const auto& cr = d.crossings[c];
            bool vertical = (mask >> c) & 1;
            if (!vertical) {
                shift += cr.up_over ? +2 : -2; // horizontal smoothing
                continue;
            }
            shift += cr.up_over ? -2 : +2;
            std::size_t fp = n + cr.pos, fq = n + cr.pos + 1;
            std::size_t a = link[fp], b = link[fq];
            if (a == fq) {
                ++loops; // the two frontier ends belonged to one strand
            } else {
                link[a] = b;
                link[b] = a;
            }
            link[fp] = fq;
            link[fq] = fp;
        }
        std::vector<std::size_t> match(2 * n);
        for (std::size_t i = 0; i < 2 * n; ++i) match[i] = link[i];
        merged[{std::move(match), loops}] += OmegaScalar::power(shift);
    }

    std::vector<std::pair<OmegaScalar, BiangleDiagram>> out;
    for (auto& [key, coef] : merged) {
        if (coef.is_zero()) continue;
        BiangleDiagram r;
        r.edge = d.edge;
        r.left = d.left;
        r.right = d.right;
        r.left_is_occ0 = d.left_is_occ0;
        r.match = key.first;
        r.loops = key.second;
        out.push_back({coef, std::move(r)});
    }
    return out;
}

OmegaScalar biangle_trace(const BiangleDiagram& d, const StateAssignment& s) {
    if (!d.crossings.empty()) throw DomainError("biangle_trace needs a crossing-free diagram");
    if (s.size() != d.points()) throw DomainError("state assignment has wrong size");
    const std::size_t l = d.left.size();
    int sign = 1;
    Int shift = 0;
    for (std::size_t i = 0; i < d.points(); ++i) {
        std::size_t j = d.match[i];
        if (j <= i) continue;
        int si = s[i], sj = s[j];
        bool i_left = i < l, j_left = j < l;
        if (i_left != j_left) {
            if (si != sj) return OmegaScalar::zero(); // a_-^+ or a_+^-
        } else if (i_left) {
            // left return, i is the top endpoint
            if (si == sj) return OmegaScalar::zero(); // b_+^+ or b_-^-
            if (si == +1) {
                sign = -sign;
                shift -= 5; // b_-^+
            } else {
                shift -= 1; // b_+^-
            }
        } else {
            if (si == sj) return OmegaScalar::zero(); // c_+^+ or c_-^-
            if (si == -1) {
                sign = -sign;
                shift += 5; // c_+^-
            } else {
                shift += 1; // c_-^+
            }
        }
    }
    OmegaScalar v(sign, shift);
    OmegaScalar loop = OmegaScalar(-1, 4) + OmegaScalar(-1, -4);
    for (Int k = 0; k < d.loops; ++k) v *= loop;
    return v;
}

// ---- the state sum ----

namespace {

struct StateOption {
    int sign_first;
    int sign_second;
    int coef_sign;
    Int coef_shift;
};

struct StatePair {
    EndpointRef first;  // left endpoint of a through strand, or top of a return
    EndpointRef second;
    StateOption opt[2];
};

struct Resolution {
    OmegaScalar base; // Kauffman coefficient times loop factor
    std::vector<StatePair> pairs;
};

void collect_pairs(const BiangleDiagram& d, std::vector<StatePair>& pairs) {
    const std::size_t l = d.left.size();
    auto ep = [&](std::size_t id) { return id < l ? d.left[id] : d.right[id - l]; };
    for (std::size_t i = 0; i < d.points(); ++i) {
        std::size_t j = d.match[i];
        if (j <= i) continue;
        StatePair sp;
        sp.first = ep(i);
        sp.second = ep(j);
        bool i_left = i < l, j_left = j < l;
        if (i_left != j_left) {
            sp.opt[0] = {+1, +1, +1, 0};
            sp.opt[1] = {-1, -1, +1, 0};
        } else if (i_left) {
            sp.opt[0] = {+1, -1, -1, -5}; // b_-^+
            sp.opt[1] = {-1, +1, +1, -1}; // b_+^-
        } else {
            sp.opt[0] = {-1, +1, -1, +5}; // c_+^-
            sp.opt[1] = {+1, -1, +1, +1}; // c_-^+
        }
        pairs.push_back(sp);
    }
}

using GlobalTerms = std::map<ExpVec, OmegaScalar, LexDescending>;

// Sum over the sign assignments of one resolution, masks in [lo, hi).
void accumulate_states(const GoodPosition& gp, const Resolution& res, std::uint64_t lo,
                       std::uint64_t hi, const std::vector<std::size_t>& arc_order,
                       GlobalTerms& out) {
    const std::size_t s = gp.arcs.size();
    const std::size_t m3 = 3 * gp.T->num_triangles();
    std::vector<int> sig_in(s), sig_out(s);
    std::vector<Int> exps(m3);
    std::vector<std::size_t> touched;
    touched.reserve(2 * s);
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
        int sign = 1;
        Int shift = 0;
        for (std::size_t j = 0; j < res.pairs.size(); ++j) {
            const StatePair& sp = res.pairs[j];
            const StateOption& o = sp.opt[(mask >> j) & 1];
            (sp.first.is_in ? sig_in : sig_out)[sp.first.arc] = o.sign_first;
            (sp.second.is_in ? sig_in : sig_out)[sp.second.arc] = o.sign_second;
            sign *= o.coef_sign;
            shift += o.coef_shift;
        }
        Int phase = 0;
        bool dead = false;
        touched.clear();
        for (std::size_t k : arc_order) {
            const TriangleArc& a = gp.arcs[k];
            int si = sig_in[k], so = sig_out[k];
            std::size_t first, second;
            int sf, ss;
            if (a.slot_out == (a.slot_in + 1) % 3) {
                first = a.slot_in;
                second = a.slot_out;
                sf = si;
                ss = so;
            } else {
                first = a.slot_out;
                second = a.slot_in;
                sf = so;
                ss = si;
            }
            if (sf == -1 && ss == +1) {
                dead = true;
                break;
            }
            phase -= static_cast<Int>(sf) * ss;
            append_generator(exps, phase, a.tri, first, sf);
            append_generator(exps, phase, a.tri, second, ss);
            touched.push_back(3 * a.tri + first);
            touched.push_back(3 * a.tri + second);
        }
        if (!dead) {
            OmegaScalar coef = res.base * OmegaScalar(sign, shift + phase);
            auto it = out.find(exps);
            if (it == out.end())
                out.emplace(exps, coef);
            else {
                it->second += coef;
                if (it->second.is_zero()) out.erase(it);
            }
        }
        for (std::size_t t : touched) exps[t] = 0;
    }
}

} // namespace

QLaurent state_sum(const GoodPosition& gp, const EpsilonPtr& eps, int threads) {
    QLaurent result(eps);
    if (gp.arcs.empty()) return QLaurent::one(eps);
    const IdealTriangulation& T = *gp.T;

    // Resolutions: the ascent biangle resolves; all other biangles are fixed.
    std::vector<StatePair> fixed_pairs;
    const BiangleDiagram* ascent = nullptr;
    for (const auto& b : gp.biangles) {
        if (!b.crossings.empty()) {
            if (ascent) throw InternalError("more than one biangle carries crossings");
            ascent = &b;
        } else {
            collect_pairs(b, fixed_pairs);
        }
    }

    std::vector<Resolution> resolutions;
    OmegaScalar loop = OmegaScalar(-1, 4) + OmegaScalar(-1, -4);
    if (ascent) {
        for (auto& [coef, d] : kauffman_resolve(*ascent)) {
            Resolution r;
            r.base = coef;
            for (Int k = 0; k < d.loops; ++k) r.base *= loop;
            r.pairs = fixed_pairs;
            collect_pairs(d, r.pairs);
            resolutions.push_back(std::move(r));
        }
    } else {
        Resolution r;
        r.base = OmegaScalar::one();
        r.pairs = fixed_pairs;
        resolutions.push_back(std::move(r));
    }

    // Product order over triangles: within a triangle, increasing elevation
    // (largest elevation key first).
    std::vector<std::size_t> arc_order(gp.arcs.size());
    for (std::size_t k = 0; k < arc_order.size(); ++k) arc_order[k] = k;
    std::sort(arc_order.begin(), arc_order.end(), [&gp](std::size_t a, std::size_t b) {
        if (gp.arcs[a].tri != gp.arcs[b].tri) return gp.arcs[a].tri < gp.arcs[b].tri;
        return gp.arcs[a].elevation > gp.arcs[b].elevation;
    });

    GlobalTerms total;
    for (const auto& res : resolutions) {
        const std::uint64_t nstates = std::uint64_t{1} << res.pairs.size();
        int nt = threads;
        if (nt <= 1 || nstates < 1024) {
            accumulate_states(gp, res, 0, nstates, arc_order, total);
        } else {
            std::vector<GlobalTerms> parts(static_cast<std::size_t>(nt));
            std::vector<std::thread> pool;
            std::uint64_t chunk = (nstates + nt - 1) / nt;
            for (int t = 0; t < nt; ++t) {
                std::uint64_t lo = chunk * t, hi = std::min(nstates, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back([&, lo, hi, t] {
                    accumulate_states(gp, res, lo, hi, arc_order, parts[static_cast<std::size_t>(t)]);
                });
            }
            for (auto& th : pool) th.join();
            for (auto& part : parts)
                for (auto& [p, c] : part) {
                    auto it = total.find(p);
                    if (it == total.end())
                        total.emplace(p, c);
                    else {
                        it->second += c;
                        if (it->second.is_zero()) total.erase(it);
                    }
                }
        }
    }

    // Rewrite from triangle-side generators to edge generators Z_e.
    const std::size_t n = T.num_edges();
    std::map<ExpVec, Int> image_phase_cache;
    for (const auto& [gexp, coef] : total) {
        ExpVec p(n);
        for (std::size_t e = 0; e < n; ++e) {
            auto [t1, a] = T.occurrences(e)[0];
            auto [t2, b] = T.occurrences(e)[1];
            Int p1 = gexp[3 * t1 + a], p2 = gexp[3 * t2 + b];
            if (p1 != p2) throw InternalError("state sum term escapes the Chekhov-Fock subalgebra");
            p[e] = p1;
        }
        auto it = image_phase_cache.find(p);
        if (it == image_phase_cache.end()) {
            std::vector<Int> exps(3 * T.num_triangles(), 0);
            Int phase = 0;
            for (std::size_t e = 0; e < n; ++e) {
                auto [t1, a] = T.occurrences(e)[0];
                auto [t2, b] = T.occurrences(e)[1];
                append_generator(exps, phase, t1, a, p[e]);
                append_generator(exps, phase, t2, b, p[e]);
            }
            it = image_phase_cache.emplace(std::move(p), phase).first;
        }
        result.add_term(it->first, coef.shifted(-it->second));
    }
    return result;
}

QLaurent quantum_trace(const IdealTriangulation& T, const CurveWord& c, const EpsilonPtr& eps,
                       int threads) {
    return state_sum(good_position(T, c), eps, threads);
}

} // namespace qdual
