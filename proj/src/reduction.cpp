#include "fbga/reduction.hpp"

#include "fbga/error.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fbga {

OrbitGraph orbit_graph(const BiserialFBG& f) {
    const RibbonGraph& g = f.graph();
    auto orbits = half_orbits(f);
    const int no = static_cast<int>(orbits.size());
    std::vector<int> pre(g.num_half_edges());
    std::vector<std::string> names(no);
    for (int i = 0; i < no; ++i) {
        names[i] = "[" + g.half_name(orbits[i].front()) + "]";
        for (int h : orbits[i]) pre[h] = i;
    }
    std::vector<std::vector<int>> rot(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
        auto fans = nu_fans(f, v);
        for (int h : fans.front().halves) rot[v].push_back(pre[h]);
    }
    std::vector<int> iota(no);
    bool fixed = false;
    for (int i = 0; i < no; ++i) {
        iota[i] = pre[g.iota(orbits[i].front())];
        fixed = fixed || iota[i] == i;
    }
    OrbitGraph og;
    og.dg.g = RibbonGraph::make(g.vertex_names(), names, rot, iota, fixed);
    og.dg.d = f.degrees();
    const RibbonGraph& q = og.dg.g;

    og.members.assign(no, {});
    og.orbit_of.assign(g.num_half_edges(), -1);
    for (int i = 0; i < no; ++i) {
        int x = q.half(names[i]);
        og.members[x] = orbits[i];
        for (int h : orbits[i]) og.orbit_of[h] = x;
    }
    for (int h = 0; h < g.num_half_edges(); ++h) {
        int x = og.orbit_of[h];
        if (q.rho(x) != og.orbit_of[g.rho(h)] || q.iota(x) != og.orbit_of[g.iota(h)] ||
            q.source(x) != g.source(h))
            throw std::logic_error("orbit graph maps depend on the representative");
    }
    og.loops_above.assign(q.num_edges(), {});
    for (int e = 0; e < q.num_edges(); ++e) {
        const Edge& E = q.edges()[e];
        if (!E.orbifold()) continue;
        std::set<int> loops;
        for (int h : og.members[E.a]) loops.insert(g.edge_of(h));
        og.loops_above[e].assign(loops.begin(), loops.end());
    }
    return og;
}

DoubleCover double_cover(const DegGraph& og) {
    const RibbonGraph& g = og.g;
    DoubleCover dc;
    bool any_fixed = false;
    for (int h = 0; h < g.num_half_edges(); ++h) any_fixed = any_fixed || g.fixed(h);
    if (!any_fixed) {
        dc.dg = og;
        dc.base_v.resize(g.num_vertices());
        dc.base_h.resize(g.num_half_edges());
        for (int v = 0; v < g.num_vertices(); ++v) dc.base_v[v] = v;
        for (int h = 0; h < g.num_half_edges(); ++h) dc.base_h[h] = h;
        return dc;
    }
    const int nv = g.num_vertices(), nh = g.num_half_edges();
    std::vector<std::string> vn, hn;
    for (int i = 1; i <= 2; ++i) {
        for (int v = 0; v < nv; ++v) vn.push_back(g.vertex_name(v) + "#" + std::to_string(i));
    }
    for (int i = 1; i <= 2; ++i)
        for (int h = 0; h < nh; ++h) hn.push_back(g.half_name(h) + "#" + std::to_string(i));
    // pre-index: copy i of x is (i-1)*n + x
    std::vector<std::vector<int>> rot(2 * nv);
    for (int i = 0; i < 2; ++i)
        for (int v = 0; v < nv; ++v)
            for (int h : g.rotation(v)) rot[i * nv + v].push_back(i * nh + h);
    std::vector<int> iota(2 * nh);
    for (int i = 0; i < 2; ++i)
        for (int h = 0; h < nh; ++h)
            iota[i * nh + h] = g.fixed(h) ? (1 - i) * nh + h : i * nh + g.iota(h);

    dc.covered = true;
    dc.dg.g = RibbonGraph::make(vn, hn, rot, iota, false);
    const RibbonGraph& c = dc.dg.g;
    dc.dg.d.assign(2 * nv, 0);
    dc.phi_v.assign(2 * nv, -1);
    dc.phi_h.assign(2 * nh, -1);
    dc.base_v.assign(2 * nv, -1);
    dc.base_h.assign(2 * nh, -1);
    for (int v = 0; v < nv; ++v) {
        int a = c.find_vertex(vn[v]), b = c.find_vertex(vn[nv + v]);
        dc.dg.d[a] = dc.dg.d[b] = og.d[v];
        dc.phi_v[a] = b;
        dc.phi_v[b] = a;
        dc.base_v[a] = dc.base_v[b] = v;
    }
    for (int h = 0; h < nh; ++h) {
        int a = c.half(hn[h]), b = c.half(hn[nh + h]);
        dc.phi_h[a] = b;
        dc.phi_h[b] = a;
        dc.base_h[a] = dc.base_h[b] = h;
    }
    return dc;
}

ReducedForm reduced_form(const BiserialFBG& f) {
    ReducedForm r;
    r.og = orbit_graph(f);
    DoubleCover dc = double_cover(r.og.dg);
    r.admissible = !dc.covered;
    r.dg = dc.dg;
    r.phi_v = dc.phi_v;
    r.phi_h = dc.phi_h;
    r.base_h = dc.base_h;
    for (int v = 0; v < r.dg.g.num_vertices(); ++v)
        if (r.dg.d[v] % r.dg.g.val(v) != 0) throw std::logic_error("reduced form has a fractional multiplicity");
    return r;
}

bool is_representation_finite(const BiserialFBG& f) { return is_brauer_tree(reduced_form(f).dg); }

SkewGroupQuiver skew_group_quiver(const BiserialFBG& f) {
    SkewGroupQuiver out;
    if (is_admissible(f).admissible) {
        OrbitGraph og = orbit_graph(f);
        out.q = build_quiver(check_si(og.dg), Presentation::TwoRegular);
        out.q.relations.clear();
        out.routed_admissible = true;
        return out;
    }
    if (f.nu_order() % 2 != 0)
        throw Error(ErrorKind::UnsupportedAction, "non-admissible action needs a group of even order");

    const RibbonGraph& g = f.graph();
    auto nk = nakayama(f);
    auto horbits = half_orbits(f);
    std::vector<int> horbit_of(g.num_half_edges());
    for (size_t i = 0; i < horbits.size(); ++i)
        for (int h : horbits[i]) horbit_of[h] = static_cast<int>(i);

    // vertex ids of the basic algebra f·AG·f: one per ∘-orbit, two per ×-orbit (stabilizer of order 2)
    std::vector<int> eorbit_of(g.num_edges());
    std::vector<std::vector<int>> vid(nk.edge_orbits.size());
    Quiver& q = out.q;
    for (size_t i = 0; i < nk.edge_orbits.size(); ++i) {
        int e = nk.edge_orbits[i].front();
        for (int x : nk.edge_orbits[i]) eorbit_of[x] = static_cast<int>(i);
        const Edge& E = g.edges()[e];
        bool cross = horbit_of[E.a] == horbit_of[E.b];
        std::string base = "<" + g.edge_name(e) + ">";
        if (cross) {
            vid[i] = {static_cast<int>(q.vertices.size()), static_cast<int>(q.vertices.size()) + 1};
            q.vertices.push_back(base + "+");
            q.vertices.push_back(base + "-");
        } else {
            vid[i] = {static_cast<int>(q.vertices.size())};
            q.vertices.push_back(base);
        }
    }
    auto sign = [](size_t k, size_t n) -> std::string { return n == 1 ? "" : (k == 0 ? "+" : "-"); };
    // one arrow group per ν-orbit of arrows α_h of the 2-regular quiver, i.e. per ν-orbit of half-edges
    for (auto& orb : horbits) {
        int h = orb.front();
        const auto& S = vid[eorbit_of[g.edge_of(h)]];
        const auto& T = vid[eorbit_of[g.edge_of(g.rho(h))]];
        for (size_t i = 0; i < S.size(); ++i)
            for (size_t j = 0; j < T.size(); ++j) {
                std::string si = sign(i, S.size()), sj = sign(j, T.size());
                q.arrows.push_back(Arrow{si + "b_" + g.half_name(h) + sj, S[i], T[j], g.half_name(h), si, sj});
            }
    }
    return out;
}

}  // namespace fbga
