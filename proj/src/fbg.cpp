#include "fbga/fbg.hpp"

#include "fbga/error.hpp"
#include "fbga/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fbga {

BiserialFBG check_si(const RibbonGraph& g, const std::vector<int>& d) {
    if (g.orbifold()) throw Error(ErrorKind::StructureViolation, "a biserial FBG needs a plain ribbon graph");
    if (static_cast<int>(d.size()) != g.num_vertices())
        throw Error(ErrorKind::MalformedInput, "degree map is not total on vertices");
    std::vector<std::string> bad;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (d[v] < 1) bad.push_back("vertex '" + g.vertex_name(v) + "' needs a positive degree");
        if (g.val(v) == 0) bad.push_back("vertex '" + g.vertex_name(v) + "' has no half-edges");
    }
    if (!bad.empty()) throw Error(ErrorKind::StructureViolation, "invalid degree data", bad);

    for (int h = 0; h < g.num_half_edges(); ++h) {
        int x = g.iota(h);
        int lhs = g.iota(g.rho(h, d[g.source(h)]));
        int rhs = g.rho(x, d[g.source(x)]);
        if (lhs != rhs)
            bad.push_back("(SI) fails at '" + g.half_name(h) + "': iota(rho^" + std::to_string(d[g.source(h)]) +
                          "(h)) = '" + g.half_name(lhs) + "' but rho^" + std::to_string(d[g.source(x)]) +
                          "(iota(h)) = '" + g.half_name(rhs) + "'");
    }
    if (!bad.empty()) throw Error(ErrorKind::SIViolation, "condition (SI) violated", bad);

    BiserialFBG f;
    f.g_ = g;
    f.d_ = d;
    f.nu_.resize(g.num_half_edges());
    for (int h = 0; h < g.num_half_edges(); ++h) f.nu_[h] = g.rho(h, d[g.source(h)]);
    long long order = 1;
    std::vector<bool> seen(g.num_half_edges(), false);
    for (int h = 0; h < g.num_half_edges(); ++h) {
        if (seen[h]) continue;
        long long len = 0;
        for (int x = h; !seen[x]; x = f.nu_[x]) {
            seen[x] = true;
            ++len;
        }
        order = std::lcm(order, len);
    }
    f.order_ = static_cast<int>(order);
    return f;
}

BiserialFBG check_si(const DegGraph& dg) { return check_si(dg.g, dg.d); }

NakayamaReport nakayama(const BiserialFBG& f) {
    const RibbonGraph& g = f.graph();
    NakayamaReport r;
    r.half = f.nu_perm();
    r.order = f.nu_order();
    r.edge.resize(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& E = g.edges()[e];
        int img = g.edge_of(f.nu(E.a));
        // (SI) is exactly what makes this independent of the chosen half
        if (g.edge_of(f.nu(E.b)) != img) throw std::logic_error("nu does not descend to edges");
        r.edge[e] = img;
    }
    std::vector<bool> seen(g.num_edges(), false);
    for (int e = 0; e < g.num_edges(); ++e) {
        if (seen[e]) continue;
        std::vector<int> orb;
        for (int x = e; !seen[x]; x = r.edge[x]) {
            seen[x] = true;
            orb.push_back(x);
        }
        std::sort(orb.begin(), orb.end());
        r.edge_orbits.push_back(orb);
    }
    return r;
}

std::vector<VertexInvariants> vertex_invariants(const BiserialFBG& f) {
    const RibbonGraph& g = f.graph();
    std::vector<VertexInvariants> out(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
        VertexInvariants& I = out[v];
        I.val = g.val(v);
        I.o = std::gcd(I.val, f.degree(v));
        I.n = I.val / I.o;
        I.F = f.degree(v) / I.o;
        I.m = Rational(f.degree(v), I.val);
        if (I.m != Rational(I.F, I.n) || I.val != I.o * I.n || f.degree(v) != I.o * I.F)
            throw std::logic_error("vertex invariants inconsistent");
    }
    auto comp = g.components();
    std::vector<int> seen_n;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (static_cast<int>(seen_n.size()) <= comp[v]) seen_n.resize(comp[v] + 1, 0);
        int& n = seen_n[comp[v]];
        if (n == 0) n = out[v].n;
        if (n != out[v].n) throw std::logic_error("n(v) is not constant on a component");
    }
    if (g.connected() && !out.empty() && out[0].n != f.nu_order())
        throw std::logic_error("n(v) differs from the order of nu");
    return out;
}

std::vector<NuFan> nu_fans(const BiserialFBG& f, int v) {
    const RibbonGraph& g = f.graph();
    const auto& rot = g.rotation(v);  // starts at the least half-edge
    int o = std::gcd(g.val(v), f.degree(v));
    std::vector<NuFan> fans;
    for (int start = 0; start < g.val(v); start += o) {
        NuFan fan{v, {}};
        for (int k = 0; k < o; ++k) fan.halves.push_back(rot[start + k]);
        fans.push_back(std::move(fan));
    }
    return fans;
}

std::vector<std::vector<int>> half_orbits(const BiserialFBG& f) {
    const int nh = f.graph().num_half_edges();
    std::vector<bool> seen(nh, false);
    std::vector<std::vector<int>> out;
    for (int h = 0; h < nh; ++h) {
        if (seen[h]) continue;
        std::vector<int> orb;
        for (int x = h; !seen[x]; x = f.nu(x)) {
            seen[x] = true;
            orb.push_back(x);
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(orb);
    }
    return out;
}

const char* case_name(OrbitCase c) {
    switch (c) {
    case OrbitCase::Isolated: return "Isolated";
    case OrbitCase::SharedVerticesNonLoop: return "SharedVerticesNonLoop";
    case OrbitCase::AllLoops: return "AllLoops";
    }
    return "?";
}

std::vector<int> edge_orbit_of(const BiserialFBG& f, int e) {
    const RibbonGraph& g = f.graph();
    std::vector<int> orb;
    int x = e;
    do {
        orb.push_back(x);
        x = g.edge_of(f.nu(g.edges()[x].a));
    } while (x != e);
    std::sort(orb.begin(), orb.end());
    return orb;
}

OrbitCase classify_nu_orbit(const BiserialFBG& f, const std::vector<int>& orbit) {
    const RibbonGraph& g = f.graph();
    if (orbit.empty()) throw Error(ErrorKind::NotAnOrbit, "empty orbit");
    for (int e : orbit)
        if (e < 0 || e >= g.num_edges()) throw Error(ErrorKind::NotAnOrbit, "orbit mentions an unknown edge");
    std::vector<int> sorted = orbit;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted != edge_orbit_of(f, sorted[0])) throw Error(ErrorKind::NotAnOrbit, "edges do not form one nu-orbit");

    std::set<int> in(sorted.begin(), sorted.end());
    bool touches = false;
    for (int e : sorted) {
        const Edge& E = g.edges()[e];
        if (in.count(g.edge_of(g.rho(E.a))) || in.count(g.edge_of(g.rho(E.b)))) touches = true;
    }
    if (!touches) return OrbitCase::Isolated;
    return g.is_loop(sorted[0]) ? OrbitCase::AllLoops : OrbitCase::SharedVerticesNonLoop;
}

AdmissibleReport is_admissible(const BiserialFBG& f) {
    const RibbonGraph& g = f.graph();
    // direct test: some ν^k(h) = ι(h)
    std::optional<int> direct;
    for (auto& orb : half_orbits(f)) {
        for (int h : orb)
            if (std::binary_search(orb.begin(), orb.end(), g.iota(h))) {
                direct = h;
                break;
            }
        if (direct) break;
    }
    OrbitGraph og = orbit_graph(f);
    AdmissibleReport r;
    for (int x = 0; x < og.dg.g.num_half_edges(); ++x)
        if (og.dg.g.fixed(x)) {
            r.admissible = false;
            r.witness = og.members[x].front();
            break;
        }
    if (r.admissible != !direct.has_value()) throw std::logic_error("admissibility tests disagree");
    return r;
}

namespace {

bool tree_shape(const RibbonGraph& g) {
    return !g.orbifold() && g.connected() && g.num_edges() + 1 == g.num_vertices();
}

bool brauer_degrees(const RibbonGraph& g, const std::vector<int>& d, int* exceptional) {
    int exc = 0;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.val(v) == 0) continue;
        if (d[v] % g.val(v) != 0) return false;
        if (d[v] / g.val(v) > 1) ++exc;
    }
    if (exceptional) *exceptional = exc;
    return true;
}

}  // namespace

bool is_brauer_graph(const BiserialFBG& f) { return brauer_degrees(f.graph(), f.degrees(), nullptr); }

bool is_brauer_tree(const BiserialFBG& f) { return is_brauer_tree(f.as_deg()); }

bool is_brauer_graph(const DegGraph& dg) { return !dg.g.orbifold() && brauer_degrees(dg.g, dg.d, nullptr); }

bool is_brauer_tree(const DegGraph& dg) {
    int exc = 0;
    return tree_shape(dg.g) && brauer_degrees(dg.g, dg.d, &exc) && exc <= 1;
}

}  // namespace fbga
