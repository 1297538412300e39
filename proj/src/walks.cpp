#include "fbga/walks.hpp"

#include "fbga/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fbga {

WalkSpace walk_space(const BiserialFBG& f, bool strict) {
    WalkSpace s{f.graph(), {}, strict};
    for (auto& vi : vertex_invariants(f)) s.o.push_back(vi.o);
    return s;
}

WalkSpace walk_space_bg(const RibbonGraph& g, bool strict) {
    return WalkSpace{g, valency(g), strict};
}

SignedWalk reverse(const WalkSpace& s, const SignedWalk& w) {
    SignedWalk r;
    for (int i = w.size() - 1; i >= 0; --i) r.h.push_back(s.g.iota(w.h[i]));
    r.first_sign = w.h.empty() ? w.first_sign : w.sign(w.size() - 1);
    return r;
}

SignedWalk canonical(const WalkSpace& s, const SignedWalk& w) { return std::min(w, reverse(s, w)); }

namespace {

// clockwise distance from y to z at their common vertex, a full turn counted as val
int turn(const RibbonGraph& g, int y, int z) {
    int r = g.offset(y, z);
    return r == 0 ? g.val(g.source(y)) : r;
}

}  // namespace

std::vector<int> steps(const WalkSpace& s, const SignedWalk& w) {
    const RibbonGraph& g = s.g;
    std::vector<int> t;
    for (int i = 0; i + 1 < w.size(); ++i) {
        int back = g.iota(w.h[i]), next = w.h[i + 1];
        int u = g.source(back);
        if (g.source(next) != u)
            throw Error(ErrorKind::MalformedInput, "walk breaks at step " + std::to_string(i + 1));
        int k = w.sign(i) < 0 ? turn(g, back, next) : turn(g, next, back);
        int bound = s.strict ? s.o[u] - 1 : s.o[u];
        if (k < 1 || k > bound)
            throw Error(ErrorKind::MalformedInput, "no fan certificate at step " + std::to_string(i + 1));
        t.push_back(w.sign(i) < 0 ? k : -k);
    }
    return t;
}

bool is_valid_walk(const WalkSpace& s, const SignedWalk& w) {
    if (w.h.empty()) return false;
    try {
        steps(s, w);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::string to_string(const WalkSpace& s, const SignedWalk& w) {
    std::string out = "(";
    for (int i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += s.g.half_name(w.h[i]) + (w.sign(i) > 0 ? "+" : "-");
    }
    return out + ")";
}

namespace {


struct Checker {
    const WalkSpace& s;
    const RibbonGraph& g;
    PairReport* rep;  // null: stop at the first violation
    bool bad = false;
    // Only the violations that no extension of either walk can repair: sign clashes on a
    // common subwalk and crossing interior passages.
    bool lasting_only = false;

    void fail(bool sign, std::string why) {
        bad = true;
        if (!rep) return;
        (sign ? rep->sign_ok : rep->noncrossing_ok) = false;
        rep->violations.push_back(std::move(why));
    }
    bool done() const { return bad && !rep; }

    void signs(const SignedWalk& a, const SignedWalk& b) {
        struct End {
            int v, sign;
        };
        auto ends = [&](const SignedWalk& w) {
            return std::array<End, 2>{End{g.source(w.h.front()), w.sign(0)},
                                      End{g.source(g.iota(w.h.back())), w.sign(w.size() - 1)}};
        };
        auto ea = ends(a), eb = ends(b);
        for (auto& x : ea)
            for (auto& y : eb)
                if (x.v == y.v && x.sign != y.sign) {
                    fail(true, "signs disagree at endpoint " + g.vertex_name(x.v));
                    if (done()) return;
                }
    }

    // Maximal runs of equal half-edges along one diagonal of the alignment of a against b.
    void subwalks(const SignedWalk& a, const SignedWalk& b, bool skip_identity) {
        const int m = a.size(), n = b.size();
        for (int delta = -(m - 1); delta <= n - 1; ++delta) {
            if (skip_identity && delta == 0) continue;
            int i = std::max(0, -delta);
            while (i < m && i + delta < n) {
                if (a.h[i] != b.h[i + delta]) {
                    ++i;
                    continue;
                }
                int j = i;
                while (j + 1 < m && j + 1 + delta < n && a.h[j + 1] == b.h[j + 1 + delta]) ++j;
                at_common(a, b, i, j, i + delta, j + delta);
                if (done()) return;
                i = j + 1;
            }
        }
    }

    // Position of a walk's continuation around the reference half-edge `ref`, doubled so that a
    // walk ending at `ref` can sit half a step to one side of it (the side is fixed by its sign).
    int slot(int ref, int cont, int end_sign) const {
        if (cont >= 0) return 2 * turn(g, ref, cont);
        int L = g.val(g.source(ref));
        return end_sign > 0 ? 1 : 2 * L - 1;
    }

    void at_common(const SignedWalk& a, const SignedWalk& b, int i, int j, int ip, int jp) {
        for (int t = 0; t <= j - i; ++t)
            if (a.sign(i + t) != b.sign(ip + t)) {
                fail(false, "signs differ on common subwalk at " + g.half_name(a.h[i + t]));
                return;
            }
        int z1 = a.h[i], zr = g.iota(a.h[j]);
        int pa = i > 0 ? g.iota(a.h[i - 1]) : -1, pb = ip > 0 ? g.iota(b.h[ip - 1]) : -1;
        int na = j + 1 < a.size() ? a.h[j + 1] : -1, nb = jp + 1 < b.size() ? b.h[jp + 1] : -1;
        if (lasting_only && (pa < 0 || pb < 0 || na < 0 || nb < 0)) return;
        // both walks stop at the same end of Z: they share that endpoint and the sign condition governs it
        if ((pa < 0 && pb < 0) || (na < 0 && nb < 0)) return;
        bool start = slot(z1, pa, a.sign(i)) > slot(z1, pb, b.sign(ip));
        bool end = slot(zr, na, a.sign(j)) < slot(zr, nb, b.sign(jp));
        if (start != end)
            fail(false, "walks cross along the common subwalk from " + g.half_name(a.h[i]) + " to " + g.half_name(a.h[j]));
    }

    // Passage of b through s(b.h[j]): the arc swept from `from` round to `to`.
    struct Sweep {
        int from, to;
    };
    Sweep sweep(const SignedWalk& b, int j) const {
        int p = g.iota(b.h[j - 1]), q = b.h[j];
        return b.sign(j - 1) < 0 ? Sweep{p, q} : Sweep{q, p};
    }
    // 0 < offset of x inside the sweep < span: strictly inside
    bool inside(const Sweep& w, int x) const {
        int L = g.val(g.source(w.from));
        auto rel = [&](int y) { return ((g.position(y) - g.position(w.from)) % L + L) % L; };
        int span = rel(w.to) == 0 ? L : rel(w.to);
        int r = rel(x);
        return r > 0 && r < span;
    }

    // Interior passages through one vertex with four distinct half-edges: fine when the swept
    // arcs are nested or disjoint.
    void passage_pair(const Sweep& x, const Sweep& y) {
        if (x.from == y.from || x.from == y.to || x.to == y.from || x.to == y.to) return;
        if (g.source(x.from) != g.source(y.from)) return;
        bool c = inside(x, y.from), d = inside(x, y.to);
        bool cross = c != d || (c && d && inside(y, x.from) && inside(y, x.to));
        if (cross) fail(false, "walks cross at vertex " + g.vertex_name(g.source(x.from)));
    }

    // A walk that stops at v along x cannot get past another walk sweeping round v across x.
    void end_in_sweep(int x, const SignedWalk& b, int j) {
        Sweep w = sweep(b, j);
        if (x == w.from || x == w.to || g.source(x) != g.source(w.from)) return;
        if (inside(w, x)) fail(false, "walk ends inside the turn of the other at vertex " + g.vertex_name(g.source(x)));
    }

    void vertices(const SignedWalk& a, const SignedWalk& b, bool self) {
        for (int i = 1; i < a.size(); ++i)
            for (int j = self ? i + 1 : 1; j < b.size(); ++j) {
                passage_pair(sweep(a, i), sweep(b, j));
                if (done()) return;
            }
        auto ends = [&](const SignedWalk& x, const SignedWalk& y) {
            for (int e : {x.h.front(), g.iota(x.h.back())})
                for (int j = 1; j < y.size(); ++j) {
                    if (lasting_only && e != x.h.front()) return;  // appending moves the far end
                    end_in_sweep(e, y, j);
                    if (done()) return;
                }
        };
        ends(a, b);
        if (!self && !done()) ends(b, a);
    }

    void run(const SignedWalk& a, const SignedWalk& b) {
        bool self = a == b;
        if (!lasting_only) signs(a, b);
        if (done()) return;
        subwalks(a, b, self);
        if (done()) return;
        subwalks(a, reverse(s, b), false);
        if (done()) return;
        vertices(a, b, self);
    }
};

}  // namespace

PairReport check_pair(const WalkSpace& s, const SignedWalk& a, const SignedWalk& b) {
    PairReport rep;
    Checker c{s, s.g, &rep};
    c.run(a, b);
    return rep;
}

bool compatible(const WalkSpace& s, const SignedWalk& a, const SignedWalk& b) {
    Checker c{s, s.g, nullptr};
    c.run(a, b);
    return !c.bad;
}

std::vector<SignedWalk> enumerate_signed_walks(const WalkSpace& s, int max_len) {
    const RibbonGraph& g = s.g;
    std::vector<SignedWalk> out;
    if (max_len < 1) return out;
    SignedWalk w;
    std::function<void()> grow = [&]() {
        Checker lasting{s, g, nullptr, false, true};
        lasting.run(w, w);
        if (lasting.bad) return;  // every extension inherits the violation
        if (canonical(s, w) == w && compatible(s, w, w)) out.push_back(w);
        if (w.size() >= max_len) return;
        int back = g.iota(w.h.back());
        int u = g.source(back);
        int bound = s.strict ? s.o[u] - 1 : s.o[u];
        int sg = w.sign(w.size() - 1);
        for (int k = 1; k <= bound; ++k) {
            w.h.push_back(g.rho(back, sg < 0 ? k : -k));
            grow();
            w.h.pop_back();
        }
    };
    for (int h = 0; h < g.num_half_edges(); ++h)
        for (int sg : {+1, -1}) {
            w.h = {h};
            w.first_sign = sg;
            grow();
        }
    std::sort(out.begin(), out.end(), [](const SignedWalk& x, const SignedWalk& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

int WalkUniverse::find(const SignedWalk& w) const {
    auto it = index.find(canonical(space, w));
    return it == index.end() ? -1 : it->second;
}

namespace {

BitRow empty_row(size_t n) { return BitRow((n + 63) / 64, 0); }
void set_bit(BitRow& r, size_t j) { r[j >> 6] |= uint64_t{1} << (j & 63); }
bool get_bit(const BitRow& r, size_t j) { return (r[j >> 6] >> (j & 63)) & 1U; }
bool none(const BitRow& r) {
    for (auto x : r)
        if (x) return false;
    return true;
}
int popcount(const BitRow& r) {
    int c = 0;
    for (auto x : r) c += std::popcount(x);
    return c;
}
template <class F>
void for_bits(const BitRow& r, F&& f) {
    for (size_t w = 0; w < r.size(); ++w)
        for (uint64_t x = r[w]; x; x &= x - 1) f(static_cast<int>(w * 64 + std::countr_zero(x)));
}

void symmetrize(std::vector<BitRow>& rows) {
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (get_bit(rows[j], i)) set_bit(rows[i], j);
}

}  // namespace

std::vector<BitRow> compat_matrix(const WalkSpace& s, const std::vector<SignedWalk>& walks) {
    const long long n = static_cast<long long>(walks.size());
    std::vector<BitRow> rows(n, empty_row(n));
    // each iteration writes only its own row: upper triangle first, mirrored afterwards
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < n; ++i)
        for (long long j = i; j < n; ++j)
            if (compatible(s, walks[i], walks[j])) set_bit(rows[i], j);
    symmetrize(rows);
    return rows;
}

std::vector<BitRow> compat_matrix_serial(const WalkSpace& s, const std::vector<SignedWalk>& walks) {
    const size_t n = walks.size();
    std::vector<BitRow> rows(n, empty_row(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            if (compatible(s, walks[i], walks[j])) set_bit(rows[i], j);
    symmetrize(rows);
    return rows;
}

WalkUniverse build_universe(const WalkSpace& s, int max_len) {
    WalkUniverse u;
    u.space = s;
    u.max_len = max_len;
    u.walks = enumerate_signed_walks(s, max_len);
    u.compat = compat_matrix(s, u.walks);
    for (size_t i = 0; i < u.walks.size(); ++i) u.index[u.walks[i]] = static_cast<int>(i);
    return u;
}

long long max_count_default() {
    if (const char* e = std::getenv("FBGA_MAX_COUNT")) {
        char* end = nullptr;
        long long v = std::strtoll(e, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 2'000'000;
}

CliqueCount count_cliques(const std::vector<BitRow>& adj, const BitRow& nodes, long long cap) {
    CliqueCount res;
    std::function<void(const BitRow&)> rec = [&](const BitRow& P) {
        if (res.truncated) return;
        if (++res.count > cap) {
            res.truncated = true;
            return;
        }
        for_bits(P, [&](int v) {
            if (res.truncated) return;
            BitRow next(P.size());
            for (size_t w = 0; w < P.size(); ++w) next[w] = P[w] & adj[v][w];
            // only larger indices, so each clique is counted once
            for (size_t w = 0; w < static_cast<size_t>(v >> 6); ++w) next[w] = 0;
            next[v >> 6] &= ~((uint64_t{2} << (v & 63)) - 1);
            rec(next);
        });
    };
    rec(nodes);
    return res;
}

CliqueList maximal_cliques(const std::vector<BitRow>& adj, const BitRow& nodes, long long cap) {
    CliqueList out;
    std::vector<int> R;
    auto inter = [](const BitRow& a, const BitRow& b) {
        BitRow r(a.size());
        for (size_t w = 0; w < a.size(); ++w) r[w] = a[w] & b[w];
        return r;
    };
    auto nbr = [&](int v) {
        BitRow r = adj[v];
        r[v >> 6] &= ~(uint64_t{1} << (v & 63));
        return r;
    };
    std::function<void(BitRow, BitRow)> bk = [&](BitRow P, BitRow X) {
        if (out.truncated) return;
        if (none(P) && none(X)) {
            if (static_cast<long long>(out.cliques.size()) >= cap) {
                out.truncated = true;
                return;
            }
            auto c = R;
            std::sort(c.begin(), c.end());
            out.cliques.push_back(c);
            return;
        }
        int pivot = -1, best = -1;
        BitRow PX(P.size());
        for (size_t w = 0; w < P.size(); ++w) PX[w] = P[w] | X[w];
        for_bits(PX, [&](int u) {
            int c = popcount(inter(P, adj[u]));
            if (c > best) best = c, pivot = u;
        });
        BitRow cand = P;
        BitRow np = nbr(pivot);
        for (size_t w = 0; w < cand.size(); ++w) cand[w] &= ~np[w];
        for_bits(cand, [&](int v) {
            if (out.truncated) return;
            BitRow nv = nbr(v);
            R.push_back(v);
            bk(inter(P, nv), inter(X, nv));
            R.pop_back();
            P[v >> 6] &= ~(uint64_t{1} << (v & 63));
            set_bit(X, v);
        });
    };
    bk(nodes, BitRow(nodes.size(), 0));
    std::sort(out.cliques.begin(), out.cliques.end());
    return out;
}

std::vector<int> walk_action(const WalkUniverse& u, const std::vector<int>& half_perm) {
    std::vector<int> act(u.walks.size());
    for (size_t i = 0; i < u.walks.size(); ++i) {
        SignedWalk w = u.walks[i];
        for (int& h : w.h) h = half_perm[h];
        int j = u.find(w);
        if (j < 0) throw std::logic_error("automorphism leaves the walk universe");
        act[i] = j;
    }
    return act;
}

std::vector<std::vector<int>> walk_orbits(const std::vector<int>& action) {
    std::vector<std::vector<int>> orbits;
    std::vector<bool> seen(action.size(), false);
    for (size_t i = 0; i < action.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> orb;
        for (int j = static_cast<int>(i); !seen[j]; j = action[j]) {
            seen[j] = true;
            orb.push_back(j);
        }
        std::sort(orb.begin(), orb.end());
        orbits.push_back(orb);
    }
    return orbits;
}

SetCounts count_sets(const WalkUniverse& u, const std::vector<int>& action, long long cap) {
    SetCounts sc;
    sc.max_len = u.max_len;
    sc.walks = static_cast<long long>(u.walks.size());
    const size_t n = u.walks.size();
    if (action.empty()) {
        BitRow all = empty_row(n);
        for (size_t i = 0; i < n; ++i) set_bit(all, i);
        auto cc = count_cliques(u.compat, all, cap);
        auto mc = maximal_cliques(u.compat, all, cap);
        sc.admissible = cc.count;
        sc.complete = sc.complete_and_stable = static_cast<long long>(mc.cliques.size());
        sc.truncated = cc.truncated || mc.truncated;
        return sc;
    }
    auto orbits = walk_orbits(action);
    std::vector<int> good;  // internally compatible orbits
    for (size_t k = 0; k < orbits.size(); ++k) {
        bool ok = true;
        for (int a : orbits[k])
            for (int b : orbits[k]) ok = ok && u.compat_at(a, b);
        if (ok) good.push_back(static_cast<int>(k));
    }
    const size_t m = good.size();
    std::vector<BitRow> oadj(m, empty_row(m));
    for (size_t x = 0; x < m; ++x)
        for (size_t y = 0; y < m; ++y) {
            bool ok = true;
            for (int a : orbits[good[x]])
                for (int b : orbits[good[y]]) ok = ok && u.compat_at(a, b);
            if (ok) set_bit(oadj[x], y);
        }
    BitRow all = empty_row(m);
    for (size_t i = 0; i < m; ++i) set_bit(all, i);
    auto cc = count_cliques(oadj, all, cap);
    auto mc = maximal_cliques(oadj, all, cap);
    sc.admissible = cc.count;
    sc.complete = static_cast<long long>(mc.cliques.size());
    sc.truncated = cc.truncated || mc.truncated;
    for (auto& cl : mc.cliques) {
        BitRow in = empty_row(n), cand = empty_row(n);
        for (size_t w = 0; w < cand.size(); ++w) cand[w] = ~uint64_t{0};
        for (int x : cl)
            for (int a : orbits[good[x]]) {
                set_bit(in, a);
                for (size_t w = 0; w < cand.size(); ++w) cand[w] &= u.compat[a][w];
            }
        bool extendable = false;
        for (size_t i = 0; i < n && !extendable; ++i) extendable = get_bit(cand, i) && !get_bit(in, i);
        if (!extendable) ++sc.complete_and_stable;
    }
    return sc;
}

CliqueList complete_sets(const WalkUniverse& u, long long cap) {
    BitRow all = empty_row(u.walks.size());
    for (size_t i = 0; i < u.walks.size(); ++i) set_bit(all, i);
    return maximal_cliques(u.compat, all, cap);
}

CliqueList admissible_sets(const WalkUniverse& u, long long cap) {
    CliqueList out;
    std::vector<int> cur;
    const int n = static_cast<int>(u.walks.size());
    std::function<void(int)> rec = [&](int from) {
        if (out.truncated) return;
        if (static_cast<long long>(out.cliques.size()) >= cap) {
            out.truncated = true;
            return;
        }
        out.cliques.push_back(cur);
        for (int v = from; v < n; ++v) {
            bool ok = true;
            for (int c : cur) ok = ok && u.compat_at(c, v);
            if (!ok) continue;
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.cliques.begin(), out.cliques.end());
    return out;
}

std::vector<std::vector<int>> stable_filter(const std::vector<std::vector<int>>& sets, const std::vector<int>& action) {
    std::vector<std::vector<int>> out;
    for (auto& s : sets) {
        std::vector<int> img;
        for (int x : s) img.push_back(action[x]);
        std::sort(img.begin(), img.end());
        if (img == s) out.push_back(s);
    }
    return out;
}

Adjacency mutation_adjacency(const std::vector<std::vector<int>>& sets) {
    Adjacency adj;
    const size_t n = sets.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> root = [&](size_t x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const auto &a = sets[i], &b = sets[j];
            size_t p = 0, q = 0, diff = 0;
            while ((p < a.size() || q < b.size()) && diff <= 2) {
                if (q == b.size() || (p < a.size() && a[p] < b[q]))
                    ++diff, ++p;
                else if (p == a.size() || b[q] < a[p])
                    ++diff, ++q;
                else
                    ++p, ++q;
            }
            if (diff == 2) {
                ++adj.edges;
                parent[root(i)] = root(j);
            }
        }
    for (size_t i = 0; i < n; ++i) adj.connected = adj.connected && root(i) == root(0);
    return adj;
}

PsiReport bijection_psi(const BiserialFBG& f, int max_len, bool strict, long long cap) {
    if (cap <= 0) cap = max_count_default();
    PsiReport rep;
    rep.max_len = max_len > 0 ? max_len : 2 * f.graph().num_edges();
    ReducedForm r = reduced_form(f);
    rep.admissible = r.admissible;

    WalkUniverse src = build_universe(walk_space(f, strict), rep.max_len);
    WalkUniverse tgt = build_universe(walk_space_bg(r.dg.g, strict), rep.max_len);
    auto nu_act = walk_action(src, f.nu_perm());
    std::vector<int> phi_act;
    if (!r.admissible) phi_act = walk_action(tgt, r.phi_h);

    auto all_compat = [](const WalkUniverse& u, const std::vector<int>& A, const std::vector<int>& B) {
        for (int a : A)
            for (int b : B)
                if (!u.compat_at(a, b) && a != b) return false;
        return true;
    };
    // only orbits that are admissible on their own can sit in a stable admissible set
    auto usable = [&](const WalkUniverse& u, std::vector<std::vector<int>> orbs) {
        std::erase_if(orbs, [&](const std::vector<int>& o) { return !all_compat(u, o, o); });
        return orbs;
    };
    auto sorb = usable(src, walk_orbits(nu_act));
    std::vector<std::vector<int>> torb;
    if (r.admissible) {
        for (size_t i = 0; i < tgt.walks.size(); ++i) torb.push_back({static_cast<int>(i)});
    } else {
        torb = usable(tgt, walk_orbits(phi_act));
    }
    rep.source_orbits = static_cast<int>(sorb.size());
    rep.target_orbits = static_cast<int>(torb.size());
    if (rep.source_orbits != rep.target_orbits)
        throw Error(ErrorKind::CapMismatch,
                    "walk universes differ in size: " + std::to_string(rep.source_orbits) + " orbits on the graph, " +
                        std::to_string(rep.target_orbits) + " on the reduced form at length " +
                        std::to_string(rep.max_len));
    std::vector<int> torbit_of(tgt.walks.size(), -1);
    for (size_t k = 0; k < torb.size(); ++k)
        for (int x : torb[k]) torbit_of[x] = static_cast<int>(k);

    const RibbonGraph& red = r.dg.g;
    auto lift = [&](const SignedWalk& w) {
        int x = r.og.orbit_of[w.h.front()];
        int y = -1;
        for (int c = 0; c < red.num_half_edges() && y < 0; ++c)
            if (r.base_h[c] == x) y = c;
        SignedWalk out{{y}, w.first_sign};
        for (int t : steps(src.space, w)) out.h.push_back(red.rho(red.iota(out.h.back()), t));
        return out;
    };
    bool ok = true;
    rep.image.assign(sorb.size(), -1);
    for (size_t k = 0; k < sorb.size() && ok; ++k)
        for (int x : sorb[k]) {
            int j = tgt.find(lift(src.walks[x]));
            int img = j < 0 ? -1 : torbit_of[j];
            if (img < 0 || (rep.image[k] >= 0 && rep.image[k] != img)) {
                ok = false;
                break;
            }
            rep.image[k] = img;
        }
    if (ok) {
        std::vector<int> sorted = rep.image;
        std::sort(sorted.begin(), sorted.end());
        ok = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }
    rep.bijective = ok;

    if (ok) {
        bool pres = true;
        for (size_t a = 0; a < sorb.size() && pres; ++a)
            for (size_t b = a; b < sorb.size() && pres; ++b)
                pres = all_compat(src, sorb[a], sorb[b]) ==
                       all_compat(tgt, torb[rep.image[a]], torb[rep.image[b]]);
        rep.preserves_compat = pres;
    }
    rep.source = count_sets(src, nu_act, cap);
    rep.target = count_sets(tgt, phi_act, cap);
    return rep;
}

CycleCensus cycle_census(const RibbonGraph& g) {
    CycleCensus c;
    c.vertices = g.num_vertices();
    c.edges = g.num_edges();
    auto comp = g.components();
    c.components = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    c.betti = c.edges - c.vertices + c.components;
    c.is_tree = c.components == 1 && c.betti == 0;

    // multiplicity of plain edges between distinct vertices; loops are odd cycles on their own
    const int nv = g.num_vertices();
    std::vector<std::vector<int>> mult(nv, std::vector<int>(nv, 0));
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& E = g.edges()[e];
        if (E.orbifold()) continue;
        int u = g.source(E.a), v = g.source(E.b);
        if (u == v)
            ++c.odd_cycles;
        else
            ++mult[u][v], ++mult[v][u];
    }
    for (int u = 0; u < nv; ++u)
        for (int v = u + 1; v < nv; ++v) c.even_cycles += mult[u][v] * (mult[u][v] - 1) / 2;
    // vertex-simple cycles of length >= 3, rooted at their least vertex, each seen in both directions
    long long odd3 = 0, even3 = 0;
    std::vector<bool> on(nv, false);
    std::function<void(int, int, int, long long)> dfs = [&](int root, int v, int len, long long ways) {
        for (int w = root; w < nv; ++w) {
            if (!mult[v][w]) continue;
            if (w == root) {
                if (len >= 3) (len % 2 ? odd3 : even3) += ways * mult[v][w];
                continue;
            }
            if (on[w]) continue;
            on[w] = true;
            dfs(root, w, len + 1, ways * mult[v][w]);
            on[w] = false;
        }
    };
    for (int r = 0; r < nv; ++r) {
        on[r] = true;
        dfs(r, r, 1, 1);
        on[r] = false;
    }
    c.odd_cycles += static_cast<int>(odd3 / 2);
    c.even_cycles += static_cast<int>(even3 / 2);
    c.at_most_one_odd_no_even = c.even_cycles == 0 && c.odd_cycles <= 1;
    return c;
}

TiltDiscrete tilting_discrete(const BiserialFBG& f) {
    TiltDiscrete t;
    ReducedForm r = reduced_form(f);
    t.admissible = r.admissible;
    t.census = cycle_census(r.dg.g);
    const auto& c = t.census;
    if (!r.admissible) {
        t.discrete = c.is_tree;
        t.reason = c.is_tree ? "reduced form is a tree" : "reduced form of a non-admissible graph is not a tree";
        return t;
    }
    t.discrete = c.at_most_one_odd_no_even;
    if (c.is_tree)
        t.reason = "reduced form is a tree";
    else if (t.discrete)
        t.reason = "reduced form has a single cycle, of odd length";
    else if (c.even_cycles > 0)
        t.reason = "reduced form contains an even cycle";
    else
        t.reason = "reduced form contains two odd cycles";
    return t;
}

TwoSiltCount two_silt_count_m_ge_1(const BiserialFBG& f, long long cap) {
    if (cap <= 0) cap = max_count_default();
    const RibbonGraph& g = f.graph();
    std::vector<std::string> bad;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (f.m(v) < 1) bad.push_back("m(" + g.vertex_name(v) + ") = " + to_string(f.m(v)) + " < 1");
    if (!bad.empty()) throw Error(ErrorKind::PreconditionFailed, "needs m(v) >= 1 at every vertex", bad);

    TwoSiltCount t;
    t.census = cycle_census(g);
    t.cap = 2 * g.num_edges();
    t.cap2 = 2 * t.cap;
    WalkSpace s = walk_space_bg(g);
    auto c1 = count_sets(build_universe(s, t.cap), {}, cap);
    auto c2 = count_sets(build_universe(s, t.cap2), {}, cap);
    t.count = c1.complete;
    t.count2 = c2.complete;
    t.truncated = c1.truncated || c2.truncated;
    t.finite = !t.truncated && t.count == t.count2;
    return t;
}

namespace {

// Shortest even vertex-simple cycle (parallel pairs included), as leaving half-edges.
std::vector<int> find_even_cycle(const RibbonGraph& g) {
    const int nv = g.num_vertices();
    std::vector<int> best;
    std::vector<int> path;  // half-edges
    std::vector<bool> on(nv, false);
    std::function<void(int, int)> dfs = [&](int root, int v) {
        if (!best.empty() && path.size() + 1 >= best.size()) return;
        for (int h : g.rotation(v)) {
            int t = g.iota(h);
            if (t == h) continue;
            int w = g.source(t);
            if (!path.empty() && g.edge_of(h) == g.edge_of(path.back())) continue;
            if (w == root && path.size() % 2 == 1) {
                if (path.size() == 1 && g.edge_of(h) == g.edge_of(path.front())) continue;
                auto c = path;
                c.push_back(h);
                if (best.empty() || c.size() < best.size()) best = c;
                continue;
            }
            if (w <= root || on[w]) continue;
            on[w] = true;
            path.push_back(h);
            dfs(root, w);
            path.pop_back();
            on[w] = false;
        }
    };
    for (int r = 0; r < nv; ++r) {
        on[r] = true;
        dfs(r, r);
        on[r] = false;
    }
    return best;
}

}  // namespace

EvenCycleWitnesses even_cycle_witnesses(const DegGraph& red, const std::vector<int>& phi_h, int L) {
    const RibbonGraph& g = red.g;
    EvenCycleWitnesses out;
    out.cycle = find_even_cycle(g);
    if (out.cycle.empty()) throw Error(ErrorKind::NoEvenCycle, "reduced form has no even cycle");
    WalkSpace s = walk_space_bg(g);
    std::set<std::vector<SignedWalk>> seen;
    for (int ell = 1; ell <= L; ++ell) {
        WitnessFamily fam;
        fam.ell = ell;
        SignedWalk w{{}, +1};
        for (int r = 0; r < ell; ++r) w.h.insert(w.h.end(), out.cycle.begin(), out.cycle.end());
        w.h.push_back(out.cycle.front());
        w = canonical(s, w);
        fam.walks.push_back(w);
        auto image = [&](const SignedWalk& x) {
            SignedWalk y = x;
            for (int& h : y.h) h = phi_h[h];
            return canonical(s, y);
        };
        if (!phi_h.empty() && image(w) != w) fam.walks.push_back(image(w));
        std::sort(fam.walks.begin(), fam.walks.end());
        fam.admissible = true;
        for (auto& a : fam.walks) {
            fam.admissible = fam.admissible && is_valid_walk(s, a);
            for (auto& b : fam.walks) fam.admissible = fam.admissible && compatible(s, a, b);
        }
        fam.stable = true;
        if (!phi_h.empty()) {
            std::vector<SignedWalk> img;
            for (auto& a : fam.walks) img.push_back(image(a));
            std::sort(img.begin(), img.end());
            fam.stable = img == fam.walks;
        }
        seen.insert(fam.walks);
        out.families.push_back(std::move(fam));
    }
    out.distinct = static_cast<int>(seen.size()) == L;
    return out;
}

EvenCycleWitnesses even_cycle_witnesses(const BiserialFBG& f, int L) {
    ReducedForm r = reduced_form(f);
    return even_cycle_witnesses(r.dg, r.phi_h, L);
}

}  // namespace fbga
