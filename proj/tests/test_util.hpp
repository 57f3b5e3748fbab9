#pragma once

#include <cstdint>
#include <string>

#include "qdual/surface.hpp"

namespace qdual::test {

inline std::string surface_path(const std::string& name) {
    return std::string(QDUAL_SURFACE_DIR) + "/" + name;
}

inline const IdealTriangulation& punctured_torus() {
    static IdealTriangulation T = IdealTriangulation::load_json(surface_path("punctured_torus.json"));
    return T;
}

inline const IdealTriangulation& sphere4() {
    static IdealTriangulation T = IdealTriangulation::load_json(surface_path("sphere_4.json"));
    return T;
}

// Small deterministic generator for property tests.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    Int range(Int lo, Int hi) { // inclusive
        return lo + static_cast<Int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

} // namespace qdual::test
