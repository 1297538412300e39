#include "fbga/mutation.hpp"

#include "fbga/error.hpp"

#include <algorithm>
#include <map>

namespace fbga {

const char* direction_name(Direction d) { return d == Direction::Left ? "left" : "right"; }

OkuyamaRickardDescriptor okuyama_rickard(const BiserialFBG& f, const std::vector<int>& orbit) {
    const RibbonGraph& g = f.graph();
    classify_nu_orbit(f, orbit);  // throws NotAnOrbit
    std::vector<bool> in(g.num_half_edges(), false);
    std::vector<bool> edge_in(g.num_edges(), false);
    for (int e : orbit) {
        edge_in[e] = true;
        in[g.edges()[e].a] = in[g.edges()[e].b] = true;
    }
    OkuyamaRickardDescriptor out;
    for (int e = 0; e < g.num_edges(); ++e) {
        if (!edge_in[e]) {
            out.fixed.push_back(e);
            continue;
        }
        ORSummand s{e, {}};
        for (int y : {g.edges()[e].a, g.edges()[e].b}) {
            int p = g.rho(y, -1);
            for (int k = 1; in[p] && k < g.val(g.source(y)); ++k) p = g.rho(y, -(k + 1));
            if (!in[p]) s.degree0.push_back(g.edge_of(p));
        }
        out.moving.push_back(s);
    }
    return out;
}

DegGraph slide(const DegGraph& dg, const std::vector<bool>& in_set, Direction dir, std::vector<TraceEntry>* trace) {
    const RibbonGraph& g = dg.g;
    const int nv = g.num_vertices(), nh = g.num_half_edges();
    std::vector<std::vector<int>> attach(nh);  // runs glued next to a non-member
    std::vector<bool> whole(nv, false);

    for (int v = 0; v < nv; ++v) {
        const auto& r = g.rotation(v);
        const int L = static_cast<int>(r.size());
        int members = 0;
        for (int h : r) members += in_set[h];
        if (members == L) {
            whole[v] = true;
            continue;
        }
        for (int i = 0; i < L; ++i) {
            // a run starts at i when r[i] is a member and r[i-1] is not
            if (!in_set[r[i]] || in_set[r[(i - 1 + L) % L]]) continue;
            std::vector<int> run;
            for (int k = i; in_set[r[k % L]]; ++k) run.push_back(r[k % L]);
            if (dir == Direction::Left)
                attach[g.iota(r[(i - 1 + L) % L])] = run;
            else
                attach[g.iota(r[(i + static_cast<int>(run.size())) % L])] = run;
        }
    }

    std::vector<std::vector<int>> rot(nv);
    for (int v = 0; v < nv; ++v) {
        if (whole[v]) {
            rot[v] = g.rotation(v);
            continue;
        }
        for (int y : g.rotation(v)) {
            if (in_set[y]) continue;
            if (dir == Direction::Left) rot[v].insert(rot[v].end(), attach[y].begin(), attach[y].end());
            rot[v].push_back(y);
            if (dir == Direction::Right) rot[v].insert(rot[v].end(), attach[y].begin(), attach[y].end());
        }
    }

    std::vector<std::string> bad;
    std::vector<int> d(nv);
    for (int v = 0; v < nv; ++v) {
        long long num = static_cast<long long>(dg.d[v]) * static_cast<long long>(rot[v].size());
        if (rot[v].empty() || num % g.val(v) != 0)
            bad.push_back("vertex '" + g.vertex_name(v) + "' cannot keep multiplicity " + std::to_string(dg.d[v]) + "/" +
                          std::to_string(g.val(v)) + " at valency " + std::to_string(rot[v].size()));
        else
            d[v] = static_cast<int>(num / g.val(v));
    }
    if (!bad.empty()) throw Error(ErrorKind::UnsupportedCase, "move leaves a fractional degree", bad);

    DegGraph out{RibbonGraph::make(g.vertex_names(), g.half_names(), rot, g.iotas(), g.orbifold()), d};
    if (trace) {
        trace->clear();
        for (int h = 0; h < nh; ++h) {
            if (!in_set[h]) continue;
            const RibbonGraph& n = out.g;
            trace->push_back({g.half_name(h), g.vertex_name(g.source(h)), g.position(h), n.vertex_name(n.source(h)),
                              n.position(h)});
        }
    }
    return out;
}

namespace {

MutationResult finish_move(const BiserialFBG& f, const std::vector<bool>& in, Direction dir) {
    MutationResult res{f, dir, {}, {}, OrbitCase::Isolated, true, false};
    DegGraph moved = slide(f.as_deg(), in, dir, &res.trace);
    try {
        res.fbg = check_si(moved);
    } catch (const Error& e) {
        throw Error(ErrorKind::UnsupportedCase, "move does not produce a biserial FBG", e.violations());
    }
    return res;
}

}  // namespace

MutationResult kauer_move(const BiserialFBG& f, const std::vector<int>& orbit, Direction dir) {
    const RibbonGraph& g = f.graph();
    OrbitCase which = classify_nu_orbit(f, orbit);
    std::vector<int> edges = orbit;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<bool> in(g.num_half_edges(), false);
    for (int e : edges) in[g.edges()[e].a] = in[g.edges()[e].b] = true;

    bool hyp = true;
    if (which == OrbitCase::Isolated) {
        int n = f.nu_order();
        for (int e : edges) {
            const Edge& E = g.edges()[e];
            if (g.val(g.source(E.a)) == n || g.val(g.source(E.b)) == n) hyp = false;
            for (int h : {E.a, E.b})
                if (g.rho(h) == g.iota(h) || g.rho(h, -1) == g.iota(h)) hyp = false;
        }
    }
    MutationResult res = finish_move(f, in, dir);
    res.orbit = edges;
    res.which = which;
    res.hypotheses_ok = hyp;
    res.extended = which != OrbitCase::Isolated || !hyp;
    return res;
}

MutationResult generalized_kauer_move(const BiserialFBG& f, const std::vector<int>& halves, Direction dir) {
    const RibbonGraph& g = f.graph();
    std::vector<bool> in(g.num_half_edges(), false);
    for (int h : halves) {
        if (h < 0 || h >= g.num_half_edges()) throw Error(ErrorKind::UnknownHalfEdge, "unknown half-edge index");
        in[h] = true;
    }
    std::vector<std::string> bad;
    for (int h = 0; h < g.num_half_edges(); ++h) {
        if (!in[h]) continue;
        if (!in[g.iota(h)]) bad.push_back("not iota-closed at '" + g.half_name(h) + "'");
        if (!in[f.nu(h)]) bad.push_back("not nu-closed at '" + g.half_name(h) + "'");
    }
    if (!bad.empty()) throw Error(ErrorKind::NotStable, "half-edge set is not iota- and nu-stable", bad);

    MutationResult res = finish_move(f, in, dir);
    std::map<int, bool> edges;
    for (int h = 0; h < g.num_half_edges(); ++h)
        if (in[h]) edges[g.edge_of(h)] = true;
    for (auto& [e, _] : edges) res.orbit.push_back(e);
    res.extended = true;
    return res;
}

DegGraph kauer_move_orbifold(const DegGraph& og, int edge, Direction dir) {
    const RibbonGraph& g = og.g;
    if (edge < 0 || edge >= g.num_edges()) throw Error(ErrorKind::UnknownEdge, "unknown edge");
    std::vector<bool> in(g.num_half_edges(), false);
    in[g.edges()[edge].a] = true;
    in[g.iota(g.edges()[edge].a)] = true;
    return slide(og, in, dir);
}

}  // namespace fbga
