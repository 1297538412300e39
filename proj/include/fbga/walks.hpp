#pragma once

#include "fbga/fbg.hpp"
#include "fbga/reduction.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fbga {

// Permissive: the fan certificate k may reach o(v). Strict: k <= o(v) - 1. The extra walks of the
// permissive reading never survive in a ν-stable admissible set, so stable counts agree.
inline constexpr bool kDefaultStrict = false;

// Where walks live: a ribbon graph plus the width o(v) of the fans at each vertex.
// For a Brauer graph o = val.
struct WalkSpace {
    RibbonGraph g;
    std::vector<int> o;
    bool strict = kDefaultStrict;
};

WalkSpace walk_space(const BiserialFBG& f, bool strict = kDefaultStrict);
WalkSpace walk_space_bg(const RibbonGraph& g, bool strict = kDefaultStrict);  // Brauer-graph reading, o = val

// Half-walk h_1..h_l with ε(h_1) = first_sign, alternating. The other orientation
// ι(w) carries ε(ι h_i) = ε(h_i).
struct SignedWalk {
    std::vector<int> h;
    int first_sign = +1;

    int size() const { return static_cast<int>(h.size()); }
    int sign(int i) const { return (i % 2 == 0) ? first_sign : -first_sign; }
    auto operator<=>(const SignedWalk&) const = default;
};

SignedWalk reverse(const WalkSpace& s, const SignedWalk& w);
SignedWalk canonical(const WalkSpace& s, const SignedWalk& w);
// Signed rotation steps t_i with h_{i+1} = ρ^{t_i}(ι h_i). Throws MalformedInput on an invalid walk.
std::vector<int> steps(const WalkSpace& s, const SignedWalk& w);
bool is_valid_walk(const WalkSpace& s, const SignedWalk& w);
std::string to_string(const WalkSpace& s, const SignedWalk& w);

struct PairReport {
    bool sign_ok = true;
    bool noncrossing_ok = true;
    std::vector<std::string> violations;
    bool ok() const { return sign_ok && noncrossing_ok; }
};
PairReport check_pair(const WalkSpace& s, const SignedWalk& a, const SignedWalk& b);
bool compatible(const WalkSpace& s, const SignedWalk& a, const SignedWalk& b);

// Every canonical signed walk of length <= max_len that is admissible on its own.
std::vector<SignedWalk> enumerate_signed_walks(const WalkSpace& s, int max_len);

// Bitset rows; compat[i] has bit j set iff walks i and j are compatible.
using BitRow = std::vector<uint64_t>;
struct WalkUniverse {
    WalkSpace space;
    int max_len = 0;
    std::vector<SignedWalk> walks;
    std::vector<BitRow> compat;
    std::map<SignedWalk, int> index;

    int find(const SignedWalk& w) const;  // -1 if absent; w need not be canonical
    bool compat_at(int i, int j) const { return (compat[i][j >> 6] >> (j & 63)) & 1U; }
};
std::vector<BitRow> compat_matrix(const WalkSpace& s, const std::vector<SignedWalk>& walks);
std::vector<BitRow> compat_matrix_serial(const WalkSpace& s, const std::vector<SignedWalk>& walks);
WalkUniverse build_universe(const WalkSpace& s, int max_len);

long long max_count_default();  // FBGA_MAX_COUNT or 2'000'000

struct CliqueCount {
    long long count = 0;
    bool truncated = false;
};
// All cliques of the compatibility graph restricted to `nodes`, the empty one included.
CliqueCount count_cliques(const std::vector<BitRow>& adj, const BitRow& nodes, long long cap);
struct CliqueList {
    std::vector<std::vector<int>> cliques;  // sorted, each sorted
    bool truncated = false;
};
CliqueList maximal_cliques(const std::vector<BitRow>& adj, const BitRow& nodes, long long cap);

// Half-edge automorphism acting on walks of the universe (index permutation).
std::vector<int> walk_action(const WalkUniverse& u, const std::vector<int>& half_perm);
std::vector<std::vector<int>> walk_orbits(const std::vector<int>& action);

struct SetCounts {
    int max_len = 0;
    long long walks = 0;
    long long admissible = 0;          // AW (or AW^G)
    long long complete = 0;            // CW (or maximal among G-stable sets)
    long long complete_and_stable = 0; // complete in AW and G-stable (equals `complete` without a group)
    bool truncated = false;
};
// With an empty action: plain AW / CW. Otherwise sets closed under the action.
SetCounts count_sets(const WalkUniverse& u, const std::vector<int>& action, long long cap);

// Complete sets as walk-index lists, plain (no group).
CliqueList complete_sets(const WalkUniverse& u, long long cap);
CliqueList admissible_sets(const WalkUniverse& u, long long cap);
// Keep only the sets closed under the action.
std::vector<std::vector<int>> stable_filter(const std::vector<std::vector<int>>& sets, const std::vector<int>& action);

struct Adjacency {
    long long edges = 0;
    bool connected = true;
};
// Two complete sets are adjacent iff their symmetric difference has exactly two walks.
Adjacency mutation_adjacency(const std::vector<std::vector<int>>& sets);

struct PsiReport {
    bool admissible = true;
    int max_len = 0;
    int source_orbits = 0;  // ν-orbits of walks on Γ, each admissible as a set
    int target_orbits = 0;  // walks (or such φ-orbits) on Γ_red
    bool bijective = false;
    bool preserves_compat = false;
    SetCounts source;  // AW^ν on Γ
    SetCounts target;  // AW or AW^φ on Γ_red
    std::vector<int> image;  // source orbit -> target orbit
};
// max_len <= 0: 2 * #edges(Γ). Throws CapMismatch when the orbit universes differ in size.
PsiReport bijection_psi(const BiserialFBG& f, int max_len = 0, bool strict = kDefaultStrict, long long cap = 0);

struct CycleCensus {
    int vertices = 0, edges = 0, components = 0, betti = 0;
    bool is_tree = false;
    int odd_cycles = 0, even_cycles = 0;  // simple cycles (a loop has length 1, a parallel pair length 2)
    bool at_most_one_odd_no_even = false;
};
CycleCensus cycle_census(const RibbonGraph& g);

struct TiltDiscrete {
    bool discrete = false;
    bool admissible = true;
    std::string reason;
    CycleCensus census;  // of Γ_red
};
TiltDiscrete tilting_discrete(const BiserialFBG& f);

struct TwoSiltCount {
    int cap = 0, cap2 = 0;
    long long count = 0, count2 = 0;
    bool finite = false;  // stable between the two caps
    bool truncated = false;
    CycleCensus census;  // of Γ itself
};
// Γ read as a Brauer graph. Throws PreconditionFailed unless m(v) >= 1 everywhere.
TwoSiltCount two_silt_count_m_ge_1(const BiserialFBG& f, long long cap = 0);

struct WitnessFamily {
    int ell = 0;
    std::vector<SignedWalk> walks;  // the winding walk and its φ-image when different
    bool admissible = false;
    bool stable = false;
};
struct EvenCycleWitnesses {
    std::vector<int> cycle;  // half-edges c_1..c_{2k} leaving consecutive cycle vertices
    std::vector<WitnessFamily> families;
    bool distinct = false;
};
// On Γ_red (a Brauer graph); phi_h may be empty.
EvenCycleWitnesses even_cycle_witnesses(const DegGraph& red, const std::vector<int>& phi_h, int L);
EvenCycleWitnesses even_cycle_witnesses(const BiserialFBG& f, int L);

}  // namespace fbga
