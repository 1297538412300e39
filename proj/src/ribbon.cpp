#include "fbga/ribbon.hpp"

#include "fbga/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fbga {

std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::vector<int> sort_perm(const std::vector<std::string>& names) {
    std::vector<int> idx(names.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return names[a] < names[b]; });
    std::vector<int> rank(names.size());
    for (size_t i = 0; i < idx.size(); ++i) rank[idx[i]] = static_cast<int>(i);
    return rank;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

RibbonGraph RibbonGraph::make(std::vector<std::string> vertex_names,
                              std::vector<std::string> half_names,
                              const std::vector<std::vector<int>>& rotation,
                              const std::vector<int>& iota,
                              bool orbifold) {
    std::vector<std::string> bad;
    const int nv = static_cast<int>(vertex_names.size());
    const int nh = static_cast<int>(half_names.size());

    {
        std::set<std::string> seen;
        for (auto& s : vertex_names)
            if (!seen.insert(s).second) bad.push_back("duplicate vertex id '" + s + "'");
        seen.clear();
        for (auto& s : half_names) {
            if (s.empty()) bad.push_back("empty half-edge id");
            if (!seen.insert(s).second) bad.push_back("duplicate half-edge '" + s + "'");
        }
    }
    if (static_cast<int>(rotation.size()) != nv)
        throw Error(ErrorKind::StructureViolation, "rotation count does not match vertex count");
    if (static_cast<int>(iota.size()) != nh)
        throw Error(ErrorKind::StructureViolation, "pairing size does not match half-edge count");

    std::vector<int> owner(nh, -1);
    for (int v = 0; v < nv; ++v) {
        for (int h : rotation[v]) {
            if (h < 0 || h >= nh) {
                bad.push_back("dangling half-edge index in rotation of '" + vertex_names[v] + "'");
                continue;
            }
            if (owner[h] >= 0)
                bad.push_back("source mismatch: half-edge '" + half_names[h] + "' in rotations of '" +
                              vertex_names[owner[h]] + "' and '" + vertex_names[v] + "'");
            else
                owner[h] = v;
        }
    }
    for (int h = 0; h < nh; ++h) {
        if (owner[h] < 0) bad.push_back("half-edge '" + half_names[h] + "' is in no rotation");
        int j = iota[h];
        if (j < 0 || j >= nh) {
            bad.push_back("dangling partner of half-edge '" + half_names[h] + "'");
            continue;
        }
        if (iota[j] != h) bad.push_back("pairing is not an involution at '" + half_names[h] + "'");
        if (j == h && !orbifold) bad.push_back("pairing fixed point at '" + half_names[h] + "'");
    }
    if (!bad.empty()) throw Error(ErrorKind::StructureViolation, "invalid ribbon graph", bad);

    std::vector<int> vr = sort_perm(vertex_names), hr = sort_perm(half_names);
    RibbonGraph g;
    g.orbifold_ = orbifold;
    g.vname_.resize(nv);
    g.hname_.resize(nh);
    for (int v = 0; v < nv; ++v) g.vname_[vr[v]] = std::move(vertex_names[v]);
    for (int h = 0; h < nh; ++h) g.hname_[hr[h]] = std::move(half_names[h]);
    g.rot_.assign(nv, {});
    g.iota_.assign(nh, -1);
    g.src_.assign(nh, -1);
    g.pos_.assign(nh, -1);
    for (int v = 0; v < nv; ++v) {
        auto& r = g.rot_[vr[v]];
        for (int h : rotation[v]) r.push_back(hr[h]);
        // canonical starting point: least half-edge first
        if (!r.empty()) std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
    }
    for (int h = 0; h < nh; ++h) g.iota_[hr[h]] = hr[iota[h]];
    for (int v = 0; v < nv; ++v)
        for (size_t i = 0; i < g.rot_[v].size(); ++i) {
            g.src_[g.rot_[v][i]] = v;
            g.pos_[g.rot_[v][i]] = static_cast<int>(i);
        }
    g.edge_of_.assign(nh, -1);
    for (int h = 0; h < nh; ++h) {
        int j = g.iota_[h];
        if (j < h) continue;
        g.edge_of_[h] = g.edge_of_[j] = static_cast<int>(g.edges_.size());
        g.edges_.push_back(Edge{h, j == h ? -1 : j});
    }
    return g;
}

int RibbonGraph::find_vertex(std::string_view id) const {
    auto it = std::lower_bound(vname_.begin(), vname_.end(), id);
    return (it != vname_.end() && *it == id) ? static_cast<int>(it - vname_.begin()) : -1;
}

int RibbonGraph::find_half(std::string_view id) const {
    auto it = std::lower_bound(hname_.begin(), hname_.end(), id);
    return (it != hname_.end() && *it == id) ? static_cast<int>(it - hname_.begin()) : -1;
}

int RibbonGraph::half(std::string_view id) const {
    int h = find_half(id);
    if (h < 0) throw Error(ErrorKind::UnknownHalfEdge, "unknown half-edge '" + std::string(id) + "'");
    return h;
}

std::string RibbonGraph::edge_name(int e) const {
    const Edge& E = edges_[e];
    return E.orbifold() ? hname_[E.a] : hname_[E.a] + "|" + hname_[E.b];
}

int RibbonGraph::find_edge(std::string_view id) const {
    if (int h = find_half(id); h >= 0) return edge_of_[h];
    for (int e = 0; e < num_edges(); ++e)
        if (edge_name(e) == id) return e;
    return -1;
}

std::vector<int> RibbonGraph::components() const {
    UnionFind uf(num_vertices());
    for (int h = 0; h < num_half_edges(); ++h) uf.unite(src_[h], src_[iota_[h]]);
    std::vector<int> comp(num_vertices(), -1);
    int next = 0;
    std::map<int, int> label;
    for (int v = 0; v < num_vertices(); ++v) {
        auto [it, fresh] = label.emplace(uf.find(v), next);
        if (fresh) ++next;
        comp[v] = it->second;
    }
    return comp;
}

bool RibbonGraph::connected() const {
    auto c = components();
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

RawGraph RibbonGraph::to_raw(const std::vector<int>* degrees) const {
    RawGraph raw;
    raw.orbifold = orbifold_;
    for (int v = 0; v < num_vertices(); ++v) {
        RawGraph::Vertex rv{vname_[v], std::nullopt};
        if (degrees) rv.degree = (*degrees)[v];
        raw.vertices.push_back(rv);
        std::vector<std::string> r;
        for (int h : rot_[v]) r.push_back(hname_[h]);
        raw.rotation.emplace_back(vname_[v], std::move(r));
    }
    for (const Edge& e : edges_) {
        if (e.orbifold())
            raw.pairing.push_back({hname_[e.a]});
        else
            raw.pairing.push_back({hname_[e.a], hname_[e.b]});
    }
    return raw;
}

RibbonGraph validate_ribbon(const RawGraph& raw) {
    std::vector<std::string> bad;
    std::map<std::string, int> vidx, hidx;
    std::vector<std::string> vnames, hnames;
    for (auto& v : raw.vertices) {
        if (v.id.empty()) bad.push_back("empty vertex id");
        if (!vidx.emplace(v.id, static_cast<int>(vnames.size())).second)
            bad.push_back("duplicate vertex id '" + v.id + "'");
        else
            vnames.push_back(v.id);
    }
    std::vector<std::vector<int>> rot(vnames.size());
    std::vector<bool> has_rot(vnames.size(), false);
    for (auto& [vid, list] : raw.rotation) {
        auto it = vidx.find(vid);
        if (it == vidx.end()) {
            bad.push_back("dangling id: rotation given for unknown vertex '" + vid + "'");
            continue;
        }
        if (has_rot[it->second]) bad.push_back("rotation for vertex '" + vid + "' given twice");
        has_rot[it->second] = true;
        for (auto& h : list) {
            if (h.empty()) {
                bad.push_back("empty half-edge id at vertex '" + vid + "'");
                continue;
            }
            auto [hit, fresh] = hidx.emplace(h, static_cast<int>(hnames.size()));
            if (!fresh) {
                bad.push_back("duplicate half-edge '" + h + "'");
                continue;
            }
            hnames.push_back(h);
            rot[it->second].push_back(hit->second);
        }
    }
    std::vector<int> iota(hnames.size(), -1);
    for (auto& p : raw.pairing) {
        if (p.empty() || p.size() > 2) {
            bad.push_back("pairing entries must have one or two half-edges");
            continue;
        }
        std::vector<int> ids;
        for (auto& h : p) {
            auto it = hidx.find(h);
            if (it == hidx.end())
                bad.push_back("dangling id: pairing mentions unknown half-edge '" + h + "'");
            else
                ids.push_back(it->second);
        }
        if (ids.size() != p.size()) continue;
        for (int h : ids)
            if (iota[h] >= 0) bad.push_back("half-edge '" + hnames[h] + "' paired twice");
        if (ids.size() == 1 || ids[0] == ids[1]) {
            if (!raw.orbifold) bad.push_back("pairing fixed point at '" + hnames[ids[0]] + "'");
            iota[ids[0]] = ids[0];
        } else {
            iota[ids[0]] = ids[1];
            iota[ids[1]] = ids[0];
        }
    }
    for (size_t h = 0; h < hnames.size(); ++h)
        if (iota[h] < 0) bad.push_back("half-edge '" + hnames[h] + "' is unpaired");
    if (!bad.empty()) throw Error(ErrorKind::StructureViolation, "invalid ribbon graph", bad);
    return RibbonGraph::make(vnames, hnames, rot, iota, raw.orbifold);
}

std::vector<int> raw_degrees(const RawGraph& raw, const RibbonGraph& g) {
    std::vector<int> d(g.num_vertices(), 0);
    for (auto& v : raw.vertices)
        if (v.degree) {
            int i = g.find_vertex(v.id);
            if (i >= 0) d[i] = *v.degree;
        }
    return d;
}

std::vector<int> valency(const RibbonGraph& g) {
    std::vector<int> val(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) val[v] = g.val(v);
    return val;
}

namespace {

// Extend seed h1 -> h2 along ρ and ι. Returns false on any clash.
bool propagate(const RibbonGraph& g1, const RibbonGraph& g2, int h1, int h2,
               std::vector<int>& hmap, std::vector<int>& hinv, std::vector<int>& touched) {
    std::vector<std::pair<int, int>> stack{{h1, h2}};
    auto assign = [&](int x, int y) {
        if (hmap[x] >= 0) return hmap[x] == y;
        if (hinv[y] >= 0) return false;
        hmap[x] = y;
        hinv[y] = x;
        touched.push_back(x);
        stack.emplace_back(x, y);
        return true;
    };
    if (hmap[h1] >= 0 || hinv[h2] >= 0) return false;
    hmap[h1] = h2;
    hinv[h2] = h1;
    touched.push_back(h1);
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        if (g1.val(g1.source(x)) != g2.val(g2.source(y))) return false;
        if (g1.fixed(x) != g2.fixed(y)) return false;
        if (!assign(g1.rho(x), g2.rho(y))) return false;
        if (!assign(g1.rho(x, -1), g2.rho(y, -1))) return false;
        if (!assign(g1.iota(x), g2.iota(y))) return false;
    }
    return true;
}

}  // namespace

std::optional<Isomorphism> graph_isomorphic(const RibbonGraph& g1, const RibbonGraph& g2,
                                            const std::vector<int>* d1, const std::vector<int>* d2,
                                            int half_edge_limit) {
    if (g1.num_half_edges() > half_edge_limit || g2.num_half_edges() > half_edge_limit)
        throw Error(ErrorKind::SizeLimitExceeded, "isomorphism search limited to " +
                                                      std::to_string(half_edge_limit) + " half-edges");
    if (g1.num_vertices() != g2.num_vertices() || g1.num_half_edges() != g2.num_half_edges() ||
        g1.orbifold() != g2.orbifold())
        return std::nullopt;
    const bool use_deg = d1 && d2;

    // Components as (vertex list, half-edge list).
    auto split = [](const RibbonGraph& g) {
        auto comp = g.components();
        int nc = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
        std::vector<std::pair<std::vector<int>, std::vector<int>>> out(nc);
        for (int v = 0; v < g.num_vertices(); ++v) {
            out[comp[v]].first.push_back(v);
            for (int h : g.rotation(v)) out[comp[v]].second.push_back(h);
        }
        return out;
    };
    auto c1 = split(g1), c2 = split(g2);
    if (c1.size() != c2.size()) return std::nullopt;

    std::vector<int> hmap(g1.num_half_edges(), -1), hinv(g2.num_half_edges(), -1);
    std::vector<int> vmap(g1.num_vertices(), -1), vinv(g2.num_vertices(), -1);
    std::vector<bool> used(c2.size(), false);

    std::function<bool(size_t)> solve = [&](size_t i) -> bool {
        if (i == c1.size()) return true;
        const auto& [vs1, hs1] = c1[i];
        for (size_t j = 0; j < c2.size(); ++j) {
            if (used[j]) continue;
            const auto& [vs2, hs2] = c2[j];
            if (vs1.size() != vs2.size() || hs1.size() != hs2.size()) continue;
            if (hs1.empty()) {  // isolated vertex
                int a = vs1[0], b = vs2[0];
                if (use_deg && (*d1)[a] != (*d2)[b]) continue;
                vmap[a] = b;
                vinv[b] = a;
                used[j] = true;
                if (solve(i + 1)) return true;
                used[j] = false;
                vmap[a] = vinv[b] = -1;
                continue;
            }
            for (int seed : hs2) {
                std::vector<int> touched;
                bool ok = propagate(g1, g2, hs1[0], seed, hmap, hinv, touched);
                std::vector<int> vt;
                if (ok) {
                    for (int x : touched) {
                        int a = g1.source(x), b = g2.source(hmap[x]);
                        if (vmap[a] < 0 && vinv[b] < 0) {
                            vmap[a] = b;
                            vinv[b] = a;
                            vt.push_back(a);
                        } else if (vmap[a] != b) {
                            ok = false;
                            break;
                        }
                        if (use_deg && (*d1)[a] != (*d2)[b]) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (ok) {
                    used[j] = true;
                    if (solve(i + 1)) return true;
                    used[j] = false;
                }
                for (int a : vt) {
                    vinv[vmap[a]] = -1;
                    vmap[a] = -1;
                }
                for (int x : touched) {
                    hinv[hmap[x]] = -1;
                    hmap[x] = -1;
                }
            }
        }
        return false;
    };
    if (!solve(0)) return std::nullopt;
    return Isomorphism{vmap, hmap};
}

std::string to_dot(const RibbonGraph& g, const std::vector<int>* degrees) {
    std::ostringstream os;
    auto q = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    os << "graph G {\n  node [shape=circle];\n";
    for (int v = 0; v < g.num_vertices(); ++v) {
        os << "  " << q(g.vertex_name(v));
        if (degrees) os << " [label=" << q(g.vertex_name(v) + " (d=" + std::to_string((*degrees)[v]) + ")") << "]";
        os << ";\n";
    }
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& E = g.edges()[e];
        std::string a = g.vertex_name(g.source(E.a));
        if (E.orbifold()) {
            std::string cross = "x:" + g.half_name(E.a);
            os << "  " << q(cross) << " [shape=none,label=\"\xC3\x97\"];\n";
            os << "  " << q(a) << " -- " << q(cross) << " [label=" << q(g.edge_name(e))
               << ",taillabel=\"" << g.position(E.a) << "\"];\n";
        } else {
            std::string b = g.vertex_name(g.source(E.b));
            os << "  " << q(a) << " -- " << q(b) << " [label=" << q(g.edge_name(e)) << ",taillabel=\""
               << g.position(E.a) << "\",headlabel=\"" << g.position(E.b) << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace fbga
