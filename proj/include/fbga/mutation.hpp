#pragma once

#include "fbga/fbg.hpp"

#include <string>
#include <vector>

namespace fbga {

// T_i : P_i -> (ρ⁻¹-neighbours of P_i along both ends); the Q_j stay as stalk complexes.
struct ORSummand {
    int edge = -1;              // degree -1
    std::vector<int> degree0;   // degree 0
};
struct OkuyamaRickardDescriptor {
    std::vector<ORSummand> moving;
    std::vector<int> fixed;
};
OkuyamaRickardDescriptor okuyama_rickard(const BiserialFBG& f, const std::vector<int>& orbit);

enum class Direction { Left, Right };
const char* direction_name(Direction d);

struct TraceEntry {
    std::string half;
    std::string from_vertex;
    int from_pos = 0;
    std::string to_vertex;
    int to_pos = 0;
};

struct MutationResult {
    BiserialFBG fbg;
    Direction dir = Direction::Left;
    std::vector<int> orbit;        // mutated edges (indices are stable: ι is untouched)
    std::vector<TraceEntry> trace;
    OrbitCase which = OrbitCase::Isolated;
    bool hypotheses_ok = true;     // the isolated-orbit hypotheses, when they apply
    bool extended = false;         // outside the configuration with a written proof
};

// Each maximal cyclically consecutive run of `in_set` half-edges at a vertex slides as a block:
// left  - to just before ι(p), p the last non-member before the run;
// right - to just after ι(q), q the first non-member after the run.
// Runs filling a whole vertex stay. Degrees are rescaled so that d/val is unchanged.
DegGraph slide(const DegGraph& dg, const std::vector<bool>& in_set, Direction dir,
               std::vector<TraceEntry>* trace = nullptr);

MutationResult kauer_move(const BiserialFBG& f, const std::vector<int>& orbit, Direction dir);
MutationResult generalized_kauer_move(const BiserialFBG& f, const std::vector<int>& halves, Direction dir);
DegGraph kauer_move_orbifold(const DegGraph& og, int edge, Direction dir);

}  // namespace fbga
