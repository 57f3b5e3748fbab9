#include "qdual/lamination.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qdual {

namespace {

std::vector<CurveStep> reversed_steps(const std::vector<CurveStep>& w) {
    // Traversing backwards crosses e_1, e_s, ..., e_2; the turn after each
    // crossing is the flipped turn from the triangle preceding that edge.
    const std::size_t s = w.size();
    std::vector<CurveStep> r(s);
    for (std::size_t k = 0; k < s; ++k) {
        std::size_t edge_idx = (s - k) % s;
        std::size_t turn_idx = s - 1 - k;
        r[k] = {w[edge_idx].edge, flip(w[turn_idx].turn)};
    }
    return r;
}

std::vector<CurveStep> canonical_steps(std::vector<CurveStep> w) {
    std::vector<CurveStep> best = w;
    auto consider = [&best](std::vector<CurveStep> rot) {
        for (std::size_t k = 0; k < rot.size(); ++k) {
            if (rot < best) best = rot;
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        }
    };
    consider(w);
    consider(reversed_steps(w));
    return best;
}

} // namespace

std::vector<TracedStep> trace_word(const IdealTriangulation& T, const std::vector<CurveStep>& steps) {
    if (steps.size() < 2) throw ParseError("curve word must have at least 2 crossings");
    const std::size_t s = steps.size();
    // Two candidate starts: the two sides of the first crossed edge.
    for (int cand = 0; cand < 2; ++cand) {
        SideRef entry = T.occurrences(steps[0].edge)[cand];
        std::vector<TracedStep> out;
        out.reserve(s);
        SideRef cur = entry;
        bool ok = true;
        for (std::size_t k = 0; k < s; ++k) {
            if (T.edge(cur.tri, cur.slot) != steps[k].edge) {
                ok = false;
                break;
            }
            std::size_t slot_out =
                steps[k].turn == Turn::Left ? (cur.slot + 1) % 3 : (cur.slot + 2) % 3;
            std::size_t e_out = T.edge(cur.tri, slot_out);
            if (e_out != steps[(k + 1) % s].edge) {
                ok = false;
                break;
            }
            out.push_back({cur.tri, cur.slot, slot_out});
            const auto& occ = T.occurrences(e_out);
            SideRef here{cur.tri, slot_out};
            cur = (occ[0] == here) ? occ[1] : occ[0];
        }
        if (ok && cur == entry) return out;
    }
    throw ParseError("curve word does not trace consistently through the triangulation");
}

CurveWord::CurveWord(const IdealTriangulation& T, std::vector<CurveStep> steps) {
    for (const auto& st : steps)
        if (st.edge >= T.num_edges()) throw ParseError("curve word: edge id out of range");
    trace_word(T, steps); // validates
    steps_ = canonical_steps(std::move(steps));
}

std::vector<Int> CurveWord::mu(const IdealTriangulation& T) const {
    std::vector<Int> m(T.num_edges(), 0);
    for (const auto& st : steps_) ++m[st.edge];
    return m;
}

std::string CurveWord::to_string() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < steps_.size(); ++k) {
        if (k) os << ',';
        os << (steps_[k].edge + 1) << (steps_[k].turn == Turn::Left ? 'L' : 'R');
    }
    return os.str();
}

std::optional<std::size_t> is_peripheral(const IdealTriangulation& T, const CurveWord& c) {
    const auto& w = c.steps();
    for (const auto& st : w)
        if (st.turn != w[0].turn) return std::nullopt;
    auto traced = trace_word(T, w);
    std::size_t corner =
        w[0].turn == Turn::Left ? traced[0].slot_in : traced[0].slot_out;
    std::size_t p = T.corner_puncture(traced[0].tri, corner);
    // Cross-check through the coordinate bijection: the word's own
    // coordinates must reconstruct to the weight-1 loop around p.
    IntegralLamination round = from_coords_doubled(T, c.mu(T));
    if (round.components().size() != 1 || !round.components()[0].peripheral ||
        round.components()[0].puncture != p || round.components()[0].weight != 1)
        throw InternalError("peripheral detection disagrees with coordinate reconstruction");
    return p;
}

IntegralLamination::IntegralLamination(const IdealTriangulation& T, std::vector<Component> comps) {
    for (const auto& c : comps) {
        if (c.weight == 0) throw InternalError("lamination: zero-weight component");
        if (c.weight < 0 && !c.peripheral)
            throw NegativeNonPeripheral("negative weight on a nonperipheral component");
    }
    std::sort(comps.begin(), comps.end(), [&T](const Component& a, const Component& b) {
        auto ma = a.curve.mu(T), mb = b.curve.mu(T);
        if (ma != mb) return ma < mb;
        return a.curve < b.curve;
    });
    for (std::size_t i = 1; i < comps.size(); ++i)
        if (comps[i].curve == comps[i - 1].curve)
            throw InternalError("lamination: duplicate component curves");
    comps_ = std::move(comps);
    mu_.assign(T.num_edges(), 0);
    for (const auto& c : comps_) {
        auto m = c.curve.mu(T);
        for (std::size_t e = 0; e < m.size(); ++e) mu_[e] += c.weight * m[e];
    }
}

bool IntegralLamination::integral_coords() const {
    for (Int v : mu_)
        if (v % 2 != 0) return false;
    return true;
}

std::vector<Int> coords_doubled(const IdealTriangulation& T, const IntegralLamination& l) {
    (void)T;
    return l.mu();
}

IntegralLamination empty_lamination(const IdealTriangulation& T) {
    return IntegralLamination(T, {});
}

CurveWord peripheral_word(const IdealTriangulation& T, std::size_t p) {
    if (p >= T.num_punctures()) throw DomainError("unknown puncture");
    std::size_t t0 = 0, c0 = 0;
    bool found = false;
    for (std::size_t t = 0; t < T.num_triangles() && !found; ++t)
        for (std::size_t c = 0; c < 3 && !found; ++c)
            if (T.corner_puncture(t, c) == p) {
                t0 = t;
                c0 = c;
                found = true;
            }
    if (!found) throw InternalError("puncture with no incident corner");
    std::vector<CurveStep> steps;
    std::size_t t = t0, c = c0;
    do {
        std::size_t slot_out = (c + 1) % 3;
        std::size_t e = T.edge(t, slot_out);
        const auto& occ = T.occurrences(e);
        SideRef here{t, slot_out};
        SideRef next = (occ[0] == here) ? occ[1] : occ[0];
        steps.push_back({e, Turn::Left});
        t = next.tri;
        c = next.slot;
    } while (!(t == t0 && c == c0));
    return CurveWord(T, std::move(steps));
}

IntegralLamination peripheral_lamination(const IdealTriangulation& T, std::size_t p, Int k) {
    if (k == 0) return empty_lamination(T);
    Component comp;
    comp.curve = peripheral_word(T, p);
    comp.weight = k;
    comp.peripheral = true;
    comp.puncture = p;
    return IntegralLamination(T, {comp});
}

namespace {

// Corner counts of a mu-vector: per triangle, corner c (between slots c and
// c+1) holds (mu_c + mu_{c+1} - mu_{c+2}) / 2 arcs.
std::vector<std::array<Int, 3>> corner_counts(const IdealTriangulation& T, const std::vector<Int>& mu) {
    std::vector<std::array<Int, 3>> m(T.num_triangles());
    for (std::size_t t = 0; t < T.num_triangles(); ++t) {
        Int a = mu[T.edge(t, 0)], b = mu[T.edge(t, 1)], c = mu[T.edge(t, 2)];
        if ((a + b + c) % 2 != 0) {
            std::ostringstream os;
            os << "coordinates violate triangle parity at triangle " << t;
            throw NonRealizable(os.str());
        }
        m[t][0] = (a + b - c) / 2;
        m[t][1] = (b + c - a) / 2;
        m[t][2] = (c + a - b) / 2;
    }
    return m;
}

} // namespace

IntegralLamination from_coords_doubled(const IdealTriangulation& T, const std::vector<Int>& mu_in) {
    if (mu_in.size() != T.num_edges()) throw DomainError("coordinate vector has wrong length");
    auto m = corner_counts(T, mu_in);

    // Peripheral weights: the minimum corner count around each puncture.
    std::vector<Int> kp(T.num_punctures(), 0);
    std::vector<bool> seen(T.num_punctures(), false);
    for (std::size_t t = 0; t < T.num_triangles(); ++t) {
        for (std::size_t c = 0; c < 3; ++c) {
            std::size_t p = T.corner_puncture(t, c);
            if (!seen[p] || m[t][c] < kp[p]) {
                kp[p] = m[t][c];
                seen[p] = true;
            }
        }
    }
    for (std::size_t t = 0; t < T.num_triangles(); ++t)
        for (std::size_t c = 0; c < 3; ++c) m[t][c] -= kp[T.corner_puncture(t, c)];

    std::vector<Int> mu(T.num_edges());
    for (std::size_t e = 0; e < T.num_edges(); ++e) {
        auto [t, a] = T.occurrences(e)[0];
        mu[e] = m[t][(a + 2) % 3] + m[t][a];
        if (mu[e] < 0) throw InternalError("negative crossing count after peeling");
    }

    std::vector<Component> comps;
    for (std::size_t p = 0; p < T.num_punctures(); ++p) {
        if (kp[p] == 0) continue;
        Component comp;
        comp.curve = peripheral_word(T, p);
        comp.weight = kp[p];
        comp.peripheral = true;
        comp.puncture = p;
        comps.push_back(std::move(comp));
    }

    // Trace the remaining nonnegative normal multicurve.  Points on edge e
    // are indexed along occurrence 0's side; local side index k on
    // occurrence 1 corresponds to edge index mu-1-k.
    auto local_index = [&](std::size_t e, const SideRef& side, Int edge_idx) {
        return T.occurrences(e)[0] == side ? edge_idx : mu[e] - 1 - edge_idx;
    };
    auto edge_index = local_index; // same involution in both directions

    std::vector<std::vector<char>> visited(T.num_edges());
    for (std::size_t e = 0; e < T.num_edges(); ++e) visited[e].assign(static_cast<std::size_t>(mu[e]), 0);

    std::map<std::vector<CurveStep>, Int> tally;
    for (std::size_t e0 = 0; e0 < T.num_edges(); ++e0) {
        for (Int i0 = 0; i0 < mu[e0]; ++i0) {
            if (visited[e0][static_cast<std::size_t>(i0)]) continue;
            // Walk starting by entering occurrence 0 of e0 at edge index i0.
            std::size_t e = e0;
            Int idx = i0;
            SideRef side = T.occurrences(e0)[0];
            std::vector<CurveStep> word;
            std::size_t guard = 0, total_points = 0;
            for (Int v : mu) total_points += static_cast<std::size_t>(v);
            do {
                if (++guard > total_points + 1) throw InternalError("from_coords: tracing did not close");
                visited[e][static_cast<std::size_t>(idx)] = 1;
                Int k = local_index(e, side, idx);
                std::size_t a = side.slot, t = side.tri;
                Int m_start = m[t][(a + 2) % 3]; // arcs at the side's start corner
                Turn turn;
                std::size_t slot_out;
                Int partner_local;
                if (k < m_start) {
                    // corner (a+2)%3 joins slots (a+2)%3 and a; we sit on the
                    // successor side, so the arc index is k itself.
                    slot_out = (a + 2) % 3;
                    Int mu_out = mu[T.edge(t, slot_out)];
                    partner_local = mu_out - 1 - k;
                    turn = Turn::Right;
                } else {
                    // corner a joins slots a and a+1; arc index counts from
                    // the corner inward along side a.
                    Int r = mu[e] - 1 - k;
                    slot_out = (a + 1) % 3;
                    partner_local = r;
                    turn = Turn::Left;
                }
                word.push_back({e, turn});
                std::size_t e_next = T.edge(t, slot_out);
                SideRef exit_side{t, slot_out};
                Int idx_next = edge_index(e_next, exit_side, partner_local);
                const auto& occ = T.occurrences(e_next);
                side = (occ[0] == exit_side) ? occ[1] : occ[0];
                e = e_next;
                idx = idx_next;
                if (e == e0 && idx == i0 && !(side == T.occurrences(e0)[0]))
                    throw InternalError("from_coords: strand closed up from the wrong side");
            } while (!(e == e0 && idx == i0));
            ++tally[canonical_steps(std::move(word))];
        }
    }
    for (auto& [w, count] : tally) {
        Component comp;
        comp.curve = CurveWord(T, w);
        comp.weight = count;
        comp.peripheral = false;
        comps.push_back(std::move(comp));
    }
    IntegralLamination out(T, std::move(comps));
    if (out.mu() != mu_in) throw InternalError("from_coords: reconstruction does not reproduce input");
    return out;
}

std::vector<Int> step_positions(const IdealTriangulation& T, const std::vector<CurveStep>& steps) {
    const std::size_t s = steps.size();
    std::vector<Int> mu(T.num_edges(), 0);
    for (const auto& st : steps) ++mu[st.edge];

    bool uniform = true;
    for (const auto& st : steps)
        if (st.turn != steps[0].turn) uniform = false;
    if (uniform) {
        // Peripheral loop: on an edge crossed twice, the crossing near the
        // start-corner end of the first occurrence comes first.
        auto traced = trace_word(T, steps);
        std::vector<Int> pos(s, 0);
        for (std::size_t k = 0; k < s; ++k) {
            if (mu[steps[k].edge] == 1) continue;
            std::size_t corner =
                steps[k].turn == Turn::Left ? traced[k].slot_in : traced[k].slot_out;
            int end = T.end_of_corner(steps[k].edge, traced[k].tri, corner);
            pos[k] = (end == 1) ? 0 : 1;
        }
        return pos;
    }

    auto m = corner_counts(T, mu);
    for (std::size_t t = 0; t < T.num_triangles(); ++t)
        for (std::size_t c = 0; c < 3; ++c)
            if (m[t][c] < 0)
                throw DomainError("curve word is not in minimal position (negative corner count)");

    auto local_index = [&](std::size_t e, const SideRef& side, Int edge_idx) {
        return T.occurrences(e)[0] == side ? edge_idx : mu[e] - 1 - edge_idx;
    };

    const std::size_t e0 = steps[0].edge;
    for (int occ = 0; occ < 2; ++occ) {
        for (Int i0 = 0; i0 < mu[e0]; ++i0) {
            SideRef side = T.occurrences(e0)[occ];
            std::size_t e = e0;
            Int idx = i0;
            std::vector<Int> pos;
            pos.reserve(s);
            bool ok = true;
            for (std::size_t k = 0; k < s && ok; ++k) {
                if (e != steps[k].edge) {
                    ok = false;
                    break;
                }
                pos.push_back(idx);
                Int loc = local_index(e, side, idx);
                std::size_t a = side.slot, t = side.tri;
                Int m_start = m[t][(a + 2) % 3];
                Turn turn;
                std::size_t slot_out;
                Int partner_local;
                if (loc < m_start) {
                    slot_out = (a + 2) % 3;
                    partner_local = mu[T.edge(t, slot_out)] - 1 - loc;
                    turn = Turn::Right;
                } else {
                    Int r = mu[e] - 1 - loc;
                    slot_out = (a + 1) % 3;
                    partner_local = r;
                    turn = Turn::Left;
                }
                if (turn != steps[k].turn) {
                    ok = false;
                    break;
                }
                std::size_t e_next = T.edge(t, slot_out);
                SideRef exit_side{t, slot_out};
                Int idx_next = local_index(e_next, exit_side, partner_local);
                const auto& occs = T.occurrences(e_next);
                side = (occs[0] == exit_side) ? occs[1] : occs[0];
                e = e_next;
                idx = idx_next;
            }
            if (ok && e == e0 && idx == i0 && side == T.occurrences(e0)[occ]) return pos;
        }
    }
    throw DomainError("curve word is not in minimal position");
}

IntegralLamination canonical_decompose(const IdealTriangulation& T,
                                       const std::vector<std::pair<CurveWord, Int>>& curves) {
    std::map<CurveWord, Int> merged;
    for (const auto& [w, k] : curves) merged[w] += k;
    std::vector<Component> comps;
    for (const auto& [w, k] : merged) {
        if (k == 0) continue;
        Component comp;
        comp.curve = w;
        comp.weight = k;
        auto p = is_peripheral(T, w);
        comp.peripheral = p.has_value();
        comp.puncture = p.value_or(0);
        if (k < 0 && !comp.peripheral)
            throw NegativeNonPeripheral("curve " + w.to_string() + " has negative total weight");
        comps.push_back(std::move(comp));
    }
    IntegralLamination out(T, std::move(comps));
    // Disjoint realizability: the coordinate bijection must give back the
    // same component multiset.
    IntegralLamination round = from_coords_doubled(T, out.mu());
    bool same = round.components().size() == out.components().size();
    for (std::size_t i = 0; same && i < round.components().size(); ++i)
        same = round.components()[i].curve == out.components()[i].curve &&
               round.components()[i].weight == out.components()[i].weight;
    if (!same) throw DomainError("curves are not disjointly realizable as given");
    return out;
}

IntegralLamination module_add(const IdealTriangulation& T, const IntegralLamination& a,
                              const IntegralLamination& b) {
    std::vector<Int> mu(T.num_edges());
    for (std::size_t e = 0; e < T.num_edges(); ++e) mu[e] = a.mu()[e] + b.mu()[e];
    return from_coords_doubled(T, mu);
}

} // namespace qdual
