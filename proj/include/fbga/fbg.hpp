#pragma once

#include "fbga/ribbon.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fbga {

// Ribbon graph (possibly orbifold) together with a degree per vertex.
struct DegGraph {
    RibbonGraph g;
    std::vector<int> d;
};

// A ribbon graph with a degree map satisfying (SI). Only built through check_si.
class BiserialFBG {
public:
    const RibbonGraph& graph() const { return g_; }
    const std::vector<int>& degrees() const { return d_; }
    int degree(int v) const { return d_[v]; }
    int dh(int h) const { return d_[g_.source(h)]; }  // d(s(h))
    int nu(int h) const { return nu_[h]; }
    const std::vector<int>& nu_perm() const { return nu_; }
    int nu_order() const { return order_; }
    Rational m(int v) const { return Rational(d_[v], g_.val(v)); }
    bool truncated(int v) const { return d_[v] == 1; }
    DegGraph as_deg() const { return {g_, d_}; }

    friend BiserialFBG check_si(const RibbonGraph& g, const std::vector<int>& d);

private:
    RibbonGraph g_;
    std::vector<int> d_;
    std::vector<int> nu_;
    int order_ = 1;
};

// Throws SIViolation listing every failing half-edge with both sides of the identity.
BiserialFBG check_si(const RibbonGraph& g, const std::vector<int>& d);
BiserialFBG check_si(const DegGraph& dg);

struct NakayamaReport {
    std::vector<int> half;                  // ν on half-edges
    std::vector<int> edge;                  // ν_E on edges
    std::vector<std::vector<int>> edge_orbits;  // sorted, each sorted
    int order = 1;
};
NakayamaReport nakayama(const BiserialFBG& f);

struct VertexInvariants {
    int val = 0;
    int o = 0;  // number of ν-orbits at v
    int n = 0;  // size of each of them
    int F = 0;  // d / o
    Rational m;  // d / val = F / n
};
std::vector<VertexInvariants> vertex_invariants(const BiserialFBG& f);

struct NuFan {
    int vertex = -1;
    std::vector<int> halves;  // consecutive ρ-sequence of width o(v)
};
std::vector<NuFan> nu_fans(const BiserialFBG& f, int v);

// ν-orbits of half-edges, each sorted; listed by least member.
std::vector<std::vector<int>> half_orbits(const BiserialFBG& f);

enum class OrbitCase { Isolated, SharedVerticesNonLoop, AllLoops };
const char* case_name(OrbitCase c);

// The ν-orbit of edges containing e.
std::vector<int> edge_orbit_of(const BiserialFBG& f, int e);
// Throws NotAnOrbit unless `orbit` is exactly one ν-orbit of edges.
OrbitCase classify_nu_orbit(const BiserialFBG& f, const std::vector<int>& orbit);

struct AdmissibleReport {
    bool admissible = true;
    std::optional<int> witness;  // half-edge h with ι(h) in its own ν-orbit
};
AdmissibleReport is_admissible(const BiserialFBG& f);

bool is_brauer_graph(const BiserialFBG& f);
bool is_brauer_tree(const BiserialFBG& f);
// Same tests on a plain graph with degrees (reduced forms).
bool is_brauer_graph(const DegGraph& dg);
bool is_brauer_tree(const DegGraph& dg);

}  // namespace fbga
