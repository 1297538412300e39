#pragma once

#include "fbga/fbg.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fbga {

struct FixtureInfo {
    std::string name;
    std::string summary;
    bool brauer_graph = false;  // checked with is_brauer_graph rather than just (SI)
};

// Built-in graphs. "even-cycle-2k" takes an optional half-length: "even-cycle-2k:3" is a 6-cycle (default 2).
const std::vector<FixtureInfo>& fixture_catalog();
RawGraph fixture_raw(const std::string& name);  // throws MalformedInput for unknown names
DegGraph fixture(const std::string& name);
BiserialFBG fixture_fbg(const std::string& name);

// Name-level builder: vertex -> (degree, rotation); pairs of half-edge ids.
struct VertexSpec {
    std::string id;
    int degree = 1;
    std::vector<std::string> rotation;
};
RawGraph make_raw(const std::vector<VertexSpec>& vs, const std::vector<std::vector<std::string>>& pairs,
                  bool orbifold = false);
DegGraph load_deg(const RawGraph& raw);  // validates; degrees required

// Voltage lift of a random orbifold base: (x, i) with ν(x, i) = (x, i + c). (SI) holds by construction.
std::optional<BiserialFBG> random_cover_fbg(std::mt19937_64& rng, int max_edges);
// Random small ribbon graph and degrees, kept when (SI) holds.
std::optional<BiserialFBG> random_direct_fbg(std::mt19937_64& rng, int max_edges, int tries = 200);
// Alternates the two sources; deterministic in the seed.
std::vector<BiserialFBG> random_corpus(uint64_t seed, int count, int max_edges);

}  // namespace fbga
