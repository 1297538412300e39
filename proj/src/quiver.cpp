#include "fbga/quiver.hpp"

#include "fbga/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace fbga {

int Quiver::find_vertex(const std::string& id) const {
    auto it = std::find(vertices.begin(), vertices.end(), id);
    return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

std::map<std::string, int> Quiver::family_counts() const {
    std::map<std::string, int> c;
    for (auto& r : relations) ++c[r.family];
    return c;
}

int Quiver::count(const std::string& family) const {
    return static_cast<int>(std::count_if(relations.begin(), relations.end(),
                                          [&](const Relation& r) { return r.family == family; }));
}

Quiver build_quiver(const BiserialFBG& f, Presentation p) {
    const RibbonGraph& g = f.graph();
    const int nh = g.num_half_edges();
    Quiver q;
    for (int e = 0; e < g.num_edges(); ++e) q.vertices.push_back(g.edge_name(e));

    auto doubly_truncated = [&](int h) { return f.dh(h) == 1 && f.dh(g.iota(h)) == 1; };
    std::vector<bool> kept(nh, true);
    if (p == Presentation::Admissible) {
        // Arrows around truncated vertices go. On a doubly truncated edge the two
        // parallel arrows are equal; keep the one at the smaller half-edge.
        for (int h = 0; h < nh; ++h)
            if (f.dh(h) == 1) kept[h] = doubly_truncated(h) && h < g.iota(h);
    }
    std::vector<int> arrow_of(nh, -1);
    for (int h = 0; h < nh; ++h) {
        if (!kept[h]) continue;
        arrow_of[h] = static_cast<int>(q.arrows.size());
        q.arrows.push_back(Arrow{"a_" + g.half_name(h), g.edge_of(h), g.edge_of(g.rho(h)), g.half_name(h), "", ""});
    }
    // ρ on arrows, through the kept representative
    auto next = [&](int h) {
        int r = g.rho(h);
        if (kept[r]) return r;
        if (doubly_truncated(r)) return std::min(r, g.iota(r));
        return -1;
    };
    auto word = [&](int h, int len) {
        std::vector<int> w;
        for (int k = 0, x = h; k < len; ++k, x = next(x)) w.push_back(arrow_of[x]);
        return w;
    };

    if (p == Presentation::TwoRegular) {
        for (const Edge& E : g.edges())
            q.relations.push_back({"commutativity", {word(E.a, f.dh(E.a)), word(E.b, f.dh(E.b))}});
        for (int h = 0; h < nh; ++h)
            q.relations.push_back({"zero", {{arrow_of[h], arrow_of[g.iota(g.rho(h))]}}});
        return q;
    }

    for (const Edge& E : g.edges())
        if (f.dh(E.a) > 1 && f.dh(E.b) > 1)
            q.relations.push_back({"commutativity", {word(E.a, f.dh(E.a)), word(E.b, f.dh(E.b))}});
    for (int h = 0; h < nh; ++h)
        if (kept[h]) q.relations.push_back({"nilpotency", {word(h, f.dh(h) + 1)}});
    for (int h = 0; h < nh; ++h) {
        if (!kept[h]) continue;
        int nx = next(h);
        for (int x = 0; x < nh; ++x)
            if (kept[x] && x != nx && g.edge_of(x) == g.edge_of(g.rho(h)))
                q.relations.push_back({"zero", {{arrow_of[h], arrow_of[x]}}});
    }
    return q;
}

std::vector<BasisPath> rho_path_basis(const BiserialFBG& f) {
    const RibbonGraph& g = f.graph();
    std::vector<BasisPath> basis;
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& E = g.edges()[e];
        basis.push_back({BasisPath::Trivial, e, e, -1, 0});
        for (int h : {E.a, E.b})
            for (int k = 1; k < f.dh(h); ++k) basis.push_back({BasisPath::Path, e, g.edge_of(g.rho(h, k)), h, k});
        // both maximal paths end at the edge of ν(h); they are one socle class
        basis.push_back({BasisPath::Socle, e, g.edge_of(f.nu(E.a)), E.a, std::max(f.dh(E.a), f.dh(E.b))});
    }
    return basis;
}

const char* hom_case_name(HomCase c) {
    switch (c) {
    case HomCase::BothShared: return "both-shared";
    case HomCase::BothSharedCrossed: return "both-shared-crossed";
    case HomCase::OneShared: return "one-shared";
    case HomCase::OneSharedCrossed: return "one-shared-crossed";
    case HomCase::Disjoint: return "disjoint";
    }
    return "?";
}

HomDim hom_dim_formula(const BiserialFBG& f, int P, int Pp) {
    const RibbonGraph& g = f.graph();
    const Edge& A = g.edges()[P];
    const Edge& B = g.edges()[Pp];
    const int h = A.a, x = A.b;

    // #{k in [0, d(s(y))] : ρ^k(y) = z}: the angle from y to ν(y) passes z this often.
    auto arc = [&](int y, int z) {
        if (g.source(y) != g.source(z)) return 0;
        int r = g.offset(y, z), d = f.dh(y), val = g.val(g.source(y));
        return r <= d ? (d - r) / val + 1 : 0;
    };
    // contributions of P' seen from one end of P
    auto seen_from = [&](int y) { return arc(y, B.a) + arc(y, B.b); };

    const bool sh = g.source(h) == g.source(B.a) || g.source(h) == g.source(B.b);
    const bool sx = g.source(x) == g.source(B.a) || g.source(x) == g.source(B.b);
    const bool crossed = g.source(h) == g.source(B.b) && g.source(x) == g.source(B.a) &&
                         !(g.source(h) == g.source(B.a) && g.source(x) == g.source(B.b));
    // top(P') = soc(P) and the trivial path are each seen from both ends
    const int overlap = (P == Pp ? 1 : 0) + (g.edge_of(f.nu(h)) == Pp ? 1 : 0);

    HomDim r;
    if (sh && sx) {
        r.which = crossed ? HomCase::BothSharedCrossed : HomCase::BothShared;
        r.dim = seen_from(h) + seen_from(x) - overlap;
    } else if (sh) {
        r.which = g.source(h) == g.source(B.a) ? HomCase::OneShared : HomCase::OneSharedCrossed;
        r.dim = seen_from(h);
    } else if (sx) {
        r.which = g.source(x) == g.source(B.b) ? HomCase::OneShared : HomCase::OneSharedCrossed;
        r.dim = seen_from(x);
    } else {
        r.which = HomCase::Disjoint;
        r.dim = 0;
    }
    return r;
}

namespace {

void fill_loewy(const BiserialFBG& f, DimReport& r) {
    const int ne = f.graph().num_edges();
    r.loewy.assign(ne, {});
    for (const BasisPath& b : rho_path_basis(f)) {
        auto& layers = r.loewy[b.from];
        if (static_cast<int>(layers.size()) <= b.length) layers.resize(b.length + 1);
        layers[b.length].push_back(b.to);
    }
    for (auto& layers : r.loewy)
        for (auto& l : layers) std::sort(l.begin(), l.end());
}

void finish(DimReport& r) {
    const int ne = static_cast<int>(r.hom.size());
    r.projective.assign(ne, 0);
    r.total = 0;
    for (int P = 0; P < ne; ++P)
        for (int Q = 0; Q < ne; ++Q) {
            r.projective[P] += r.hom[P][Q];
            r.total += r.hom[P][Q];
        }
}

}  // namespace

DimReport dim_report(const BiserialFBG& f) {
    const int ne = f.graph().num_edges();
    DimReport r;
    r.hom.assign(ne, std::vector<int>(ne, 0));
#pragma omp parallel for collapse(2) schedule(static)
    for (int P = 0; P < ne; ++P)
        for (int Q = 0; Q < ne; ++Q) r.hom[P][Q] = hom_dim_formula(f, P, Q).dim;
    finish(r);
    fill_loewy(f, r);
    return r;
}

DimReport dim_report_serial(const BiserialFBG& f) {
    const int ne = f.graph().num_edges();
    DimReport r;
    r.hom.assign(ne, std::vector<int>(ne, 0));
    for (int P = 0; P < ne; ++P)
        for (int Q = 0; Q < ne; ++Q) r.hom[P][Q] = hom_dim_formula(f, P, Q).dim;
    finish(r);
    fill_loewy(f, r);
    return r;
}

DimReport dim_report_basis(const BiserialFBG& f) {
    const int ne = f.graph().num_edges();
    DimReport r;
    r.hom.assign(ne, std::vector<int>(ne, 0));
    for (const BasisPath& b : rho_path_basis(f)) ++r.hom[b.from][b.to];
    finish(r);
    fill_loewy(f, r);
    return r;
}

Quiver build_skew_quiver(const DegGraph& og) {
    const RibbonGraph& g = og.g;
    if (static_cast<int>(og.d.size()) != g.num_vertices())
        throw Error(ErrorKind::MalformedInput, "degree map is not total on vertices");
    std::vector<std::string> bad;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.val(v) == 0 || og.d[v] % g.val(v) != 0)
            bad.push_back("val(" + g.vertex_name(v) + ") = " + std::to_string(g.val(v)) + " does not divide d = " +
                          std::to_string(og.d[v]));
    if (!bad.empty()) throw Error(ErrorKind::NotSkewBG, "not a skew-Brauer graph", bad);

    Quiver q;
    const int ne = g.num_edges(), nh = g.num_half_edges();
    std::vector<std::map<std::string, int>> vid(ne);
    auto signs = [&](int h) -> std::vector<std::string> {
        return g.fixed(h) ? std::vector<std::string>{"+", "-"} : std::vector<std::string>{""};
    };
    for (int e = 0; e < ne; ++e) {
        for (auto& s : signs(g.edges()[e].a)) {
            vid[e][s] = static_cast<int>(q.vertices.size());
            q.vertices.push_back(g.edge_name(e) + s);
        }
    }
    std::map<std::tuple<int, std::string, std::string>, int> arrow;
    for (int h = 0; h < nh; ++h) {
        int r = g.rho(h);
        for (auto& i : signs(h))
            for (auto& j : signs(r)) {
                arrow[{h, i, j}] = static_cast<int>(q.arrows.size());
                q.arrows.push_back(Arrow{i + "a_" + g.half_name(h) + j, vid[g.edge_of(h)][i], vid[g.edge_of(r)][j],
                                         g.half_name(h), i, j});
            }
    }
    auto a = [&](int h, const std::string& i, const std::string& j) { return arrow.at({h, i, j}); };
    auto mult = [&](int h) { return og.d[g.source(h)] / g.val(g.source(h)); };

    // every sign-word of the cycle C_(e,h); first component is the starting sign
    auto cycles = [&](int h) {
        const int val = g.val(g.source(h));
        std::vector<std::pair<std::string, std::vector<int>>> out;
        std::vector<std::string> s(val);
        std::function<void(int)> rec = [&](int t) {
            if (t == val) {
                std::vector<int> w;
                for (int k = 0; k < val; ++k) w.push_back(a(g.rho(h, k), s[k], s[(k + 1) % val]));
                out.emplace_back(s[0], w);
                return;
            }
            for (auto& c : signs(g.rho(h, t))) {
                s[t] = c;
                rec(t + 1);
            }
        };
        rec(0);
        return out;
    };
    auto power = [](const std::vector<int>& w, int k) {
        std::vector<int> out;
        for (int i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
        return out;
    };

    for (int h = 0; h < nh; ++h) {  // (i)
        int r = g.rho(h);
        if (!g.fixed(r)) continue;
        for (auto& i : signs(h))
            for (auto& j : signs(g.rho(r)))
                q.relations.push_back({"skew-i", {{a(h, i, "+"), a(r, "+", j)}, {a(h, i, "-"), a(r, "-", j)}}});
    }
    for (const Edge& E : g.edges()) {  // (ii)
        if (E.orbifold()) continue;
        for (auto& [s1, w1] : cycles(E.a))
            for (auto& [s2, w2] : cycles(E.b))
                q.relations.push_back({"skew-ii", {power(w1, mult(E.a)), power(w2, mult(E.b))}});
    }
    for (int h = 0; h < nh; ++h) {  // (iii)
        int r = g.rho(h);
        if (g.fixed(r)) continue;
        int t = g.iota(r);
        for (auto& i : signs(h))
            for (auto& j : signs(g.rho(t))) q.relations.push_back({"skew-iii", {{a(h, i, ""), a(t, "", j)}}});
    }
    for (int h = 0; h < nh; ++h) {  // (iv)
        if (!g.fixed(h)) continue;
        for (auto& [s1, w] : cycles(h)) {
            std::string other = s1 == "+" ? "-" : "+";
            const Arrow& first = q.arrows[w[0]];
            std::vector<int> rel{a(h, other, first.sign_out)};
            rel.insert(rel.end(), w.begin() + 1, w.end());
            auto tail = power(w, mult(h) - 1);
            rel.insert(rel.end(), tail.begin(), tail.end());
            q.relations.push_back({"skew-iv", {rel}});
        }
    }
    for (int h = 0; h < nh; ++h) {  // (v)
        for (auto& [s1, w] : cycles(h)) {
            auto rel = power(w, mult(h));
            rel.push_back(w[0]);
            q.relations.push_back({"skew-v", {rel}});
        }
    }
    return q;
}

std::optional<QuiverIso> quiver_isomorphic(const Quiver& a, const Quiver& b, bool compare_relations,
                                           long long budget) {
    const int n = static_cast<int>(a.vertices.size());
    if (n != static_cast<int>(b.vertices.size()) || a.arrows.size() != b.arrows.size()) return std::nullopt;
    if (compare_relations && a.family_counts() != b.family_counts()) return std::nullopt;

    auto matrix = [n](const Quiver& q) {
        std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
        for (auto& ar : q.arrows) ++m[ar.from][ar.to];
        return m;
    };
    auto A = matrix(a), B = matrix(b);
    auto signature = [n](const std::vector<std::vector<int>>& m, int v) {
        int out = 0, in = 0;
        for (int w = 0; w < n; ++w) {
            out += m[v][w];
            in += m[w][v];
        }
        return std::tuple<int, int, int>(out, in, m[v][v]);
    };
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> map(n, -1), inv(n, -1);
    long long steps = 0;
    std::function<bool(int)> rec = [&](int k) -> bool {
        if (k == n) return true;
        int u = order[k];
        for (int x = 0; x < n; ++x) {
            if (inv[x] >= 0 || signature(A, u) != signature(B, x)) continue;
            if (++steps > budget) throw Error(ErrorKind::SizeLimitExceeded, "quiver isomorphism search budget exhausted");
            bool ok = true;
            for (int j = 0; j < k && ok; ++j) {
                int w = order[j];
                ok = A[u][w] == B[x][map[w]] && A[w][u] == B[map[w]][x];
            }
            if (!ok) continue;
            map[u] = x;
            inv[x] = u;
            if (rec(k + 1)) return true;
            map[u] = inv[x] = -1;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;

    QuiverIso iso;
    iso.vmap = map;
    iso.amap.assign(a.arrows.size(), -1);
    std::vector<bool> used(b.arrows.size(), false);
    for (size_t i = 0; i < a.arrows.size(); ++i) {
        for (size_t j = 0; j < b.arrows.size(); ++j) {
            if (used[j] || b.arrows[j].from != map[a.arrows[i].from] || b.arrows[j].to != map[a.arrows[i].to]) continue;
            used[j] = true;
            iso.amap[i] = static_cast<int>(j);
            break;
        }
    }
    return iso;
}

std::string to_dot(const Quiver& q) {
    std::ostringstream os;
    os << "digraph Q {\n";
    for (auto& v : q.vertices) os << "  \"" << v << "\";\n";
    for (auto& ar : q.arrows)
        os << "  \"" << q.vertices[ar.from] << "\" -> \"" << q.vertices[ar.to] << "\" [label=\"" << ar.id << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace fbga
