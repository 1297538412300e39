#pragma once

#include "fbga/fbg.hpp"
#include "fbga/quiver.hpp"

#include <vector>

namespace fbga {

// Γ/⟨ν⟩: same vertices, half-edges are ν-orbits, degrees inherited.
struct OrbitGraph {
    DegGraph dg;
    std::vector<std::vector<int>> members;      // orbit half-edge -> Γ half-edges (sorted)
    std::vector<int> orbit_of;                  // Γ half-edge -> orbit half-edge
    std::vector<std::vector<int>> loops_above;  // per orbit edge: the Γ loops over an orbifold edge
};
OrbitGraph orbit_graph(const BiserialFBG& f);

struct DoubleCover {
    DegGraph dg;
    bool covered = false;          // false: input had no orbifold edge and is returned as is
    std::vector<int> phi_v, phi_h;  // the involution φ (empty when !covered)
    std::vector<int> base_v, base_h;
};
DoubleCover double_cover(const DegGraph& og);

struct ReducedForm {
    OrbitGraph og;
    DegGraph dg;  // a Brauer graph
    bool admissible = true;
    std::vector<int> phi_v, phi_h;  // empty when admissible
    std::vector<int> base_h;        // Γ_red half-edge -> orbit half-edge
};
ReducedForm reduced_form(const BiserialFBG& f);

bool is_representation_finite(const BiserialFBG& f);

struct SkewGroupQuiver {
    Quiver q;
    bool routed_admissible = false;  // admissible: plain BGA quiver of the orbit graph
    bool assumes_char_not_2 = true;
};
SkewGroupQuiver skew_group_quiver(const BiserialFBG& f);

}  // namespace fbga
