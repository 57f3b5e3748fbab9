#include "qdual/surface.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace qdual {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

IdealTriangulation::IdealTriangulation(std::size_t num_edges,
                                       std::vector<std::array<std::size_t, 3>> triangles,
                                       std::vector<std::array<std::size_t, 3>> corners)
    : num_edges_(num_edges), triangles_(std::move(triangles)), corners_(std::move(corners)) {
    validate();
}

void IdealTriangulation::validate() {
    const std::size_t m = triangles_.size();
    if (corners_.size() != m)
        throw ParseError("triangulation: corners list must match triangles list");
    if (num_edges_ == 0 || m == 0) throw ParseError("triangulation: empty");

    std::vector<std::vector<SideRef>> occ(num_edges_);
    for (std::size_t t = 0; t < m; ++t) {
        for (std::size_t s = 0; s < 3; ++s) {
            std::size_t e = triangles_[t][s];
            if (e >= num_edges_) throw ParseError("triangulation: edge id out of range");
            occ[e].push_back({t, s});
        }
        if (triangles_[t][0] == triangles_[t][1] || triangles_[t][1] == triangles_[t][2] ||
            triangles_[t][0] == triangles_[t][2])
            throw ParseError("triangulation: self-folded triangle (edge used twice) rejected");
    }
    occ_.resize(num_edges_);
    for (std::size_t e = 0; e < num_edges_; ++e) {
        if (occ[e].size() != 2) {
            std::ostringstream os;
            os << "triangulation: edge " << e << " occurs " << occ[e].size()
               << " times; a closed surface needs exactly 2";
            throw ParseError(os.str());
        }
        occ_[e] = {occ[e][0], occ[e][1]};
    }

    // Derive the orientation-compatible corner identification and check the
    // explicit corner labels against it.
    UnionFind uf(3 * m);
    auto cid = [m](std::size_t t, std::size_t c) { return 3 * t + c; };
    for (std::size_t e = 0; e < num_edges_; ++e) {
        auto [t1, a] = occ_[e][0];
        auto [t2, b] = occ_[e][1];
        uf.unite(cid(t1, a), cid(t2, (b + 2) % 3));
        uf.unite(cid(t1, (a + 2) % 3), cid(t2, b));
    }
    std::size_t max_p = 0;
    for (const auto& cs : corners_)
        for (std::size_t p : cs) max_p = std::max(max_p, p);
    num_punctures_ = max_p + 1;

    // Labels must be constant on classes and distinct across classes.
    std::vector<std::size_t> class_label(3 * m, static_cast<std::size_t>(-1));
    std::vector<std::size_t> label_class(num_punctures_, static_cast<std::size_t>(-1));
    std::size_t class_count = 0;
    std::vector<bool> seen_root(3 * m, false);
    for (std::size_t t = 0; t < m; ++t) {
        for (std::size_t c = 0; c < 3; ++c) {
            std::size_t root = uf.find(cid(t, c));
            std::size_t label = corners_[t][c];
            if (!seen_root[root]) {
                seen_root[root] = true;
                ++class_count;
                class_label[root] = label;
                if (label_class[label] != static_cast<std::size_t>(-1) && label_class[label] != root)
                    throw ParseError("triangulation: one puncture label used for two distinct corner classes");
                label_class[label] = root;
            } else if (class_label[root] != label) {
                throw ParseError("triangulation: corner labels inconsistent with edge gluings");
            }
        }
    }
    if (class_count != num_punctures_)
        throw ParseError("triangulation: puncture labels must be 0..k-1 with every label used");

    // Euler characteristic: punctures - edges + triangles = 2 - 2g.
    Int chi = static_cast<Int>(num_punctures_) - static_cast<Int>(num_edges_) + static_cast<Int>(m);
    if ((2 - chi) % 2 != 0 || 2 - chi < 0)
        throw ParseError("triangulation: Euler characteristic is not 2-2g for integer g >= 0");
    genus_ = (2 - chi) / 2;

    end_punctures_.resize(num_edges_);
    for (std::size_t e = 0; e < num_edges_; ++e) {
        auto [t1, a] = occ_[e][0];
        end_punctures_[e][0] = corners_[t1][a];
        end_punctures_[e][1] = corners_[t1][(a + 2) % 3];
    }
}

int IdealTriangulation::end_of_corner(std::size_t e, std::size_t tri, std::size_t corner) const {
    for (int k = 0; k < 2; ++k) {
        auto [t, s] = occ_[e][k];
        if (t != tri) continue;
        std::size_t end0_corner = (k == 0) ? s : (s + 2) % 3;        // corner in end 0
        std::size_t end1_corner = (k == 0) ? (s + 2) % 3 : s;        // corner in end 1
        if (corner == end0_corner) return 0;
        if (corner == end1_corner) return 1;
    }
    throw InternalError("end_of_corner: corner does not flank the edge in this triangle");
}

Int IdealTriangulation::ends_at(std::size_t e, std::size_t p) const {
    Int c = 0;
    if (end_punctures_[e][0] == p) ++c;
    if (end_punctures_[e][1] == p) ++c;
    return c;
}

std::vector<Int> IdealTriangulation::peripheral_mu(std::size_t p) const {
    if (p >= num_punctures_) throw DomainError("unknown puncture");
    std::vector<Int> mu(num_edges_);
    for (std::size_t e = 0; e < num_edges_; ++e) mu[e] = ends_at(e, p);
    return mu;
}

std::vector<std::vector<Int>> IdealTriangulation::all_peripheral_mu() const {
    std::vector<std::vector<Int>> out;
    for (std::size_t p = 0; p < num_punctures_; ++p) out.push_back(peripheral_mu(p));
    return out;
}

IdealTriangulation IdealTriangulation::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("surface file: invalid JSON: ") + e.what());
    }
    if (!j.contains("edges") || !j.contains("triangles") || !j.contains("corners"))
        throw ParseError("surface file: need keys \"edges\", \"triangles\", \"corners\"");
    std::size_t n = j["edges"].get<std::size_t>();
    std::vector<std::array<std::size_t, 3>> tris, cors;
    for (const auto& row : j["triangles"]) {
        if (row.size() != 3) throw ParseError("surface file: each triangle needs 3 sides");
        tris.push_back({row[0].get<std::size_t>(), row[1].get<std::size_t>(), row[2].get<std::size_t>()});
    }
    for (const auto& row : j["corners"]) {
        if (row.size() != 3) throw ParseError("surface file: each corner row needs 3 punctures");
        cors.push_back({row[0].get<std::size_t>(), row[1].get<std::size_t>(), row[2].get<std::size_t>()});
    }
    return IdealTriangulation(n, std::move(tris), std::move(cors));
}

IdealTriangulation IdealTriangulation::load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open surface file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

EpsilonPtr epsilon_matrix(const IdealTriangulation& T) {
    auto eps = std::make_shared<EpsilonForm>(T.num_edges());
    for (std::size_t t = 0; t < T.num_triangles(); ++t) {
        for (std::size_t c = 0; c < 3; ++c) {
            std::size_t i = T.edge(t, c);
            std::size_t j = T.edge(t, (c + 1) % 3);
            eps->add(i, j, 1);
        }
    }
    for (std::size_t i = 0; i < T.num_edges(); ++i)
        for (std::size_t j = 0; j < T.num_edges(); ++j)
            if ((*eps)(i, j) > 2 || (*eps)(i, j) < -2)
                throw InternalError("epsilon entry out of range [-2,2]");
    return eps;
}

std::vector<Int> peripheral_vector_doubled(const IdealTriangulation& T, std::size_t p) {
    return T.peripheral_mu(p);
}

SplitTriangulation split(const IdealTriangulation& T) { return SplitTriangulation{&T}; }

} // namespace qdual
