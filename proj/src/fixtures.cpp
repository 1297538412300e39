#include "fbga/fixtures.hpp"

#include "fbga/error.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fbga {

const std::vector<FixtureInfo>& fixture_catalog() {
    static const std::vector<FixtureInfo> cat = {
        {"example1-preproj-a3", "preprojective algebra of type A3: loop at v, two edges v-w, d(v)=2, d(w)=1", false},
        {"triangle-nakayama", "three parallel edges, d = 1: self-injective Nakayama algebra, m = 1/3", false},
        {"kauer-gamma1", "hexavalent v1 (m 2/3) joined to v2, v3 (m 1/3); edge orbits {1,3,5}, {2,4,6}", false},
        {"kauer-gamma2", "the Kauer move of kauer-gamma1 at the orbit {1,3,5}", false},
        {"brauer-path-3", "Brauer tree: path with 3 edges, m = 1", true},
        {"even-cycle-2k", "Brauer graph: cycle of length 2k (default k = 2, 'even-cycle-2k:<k>'), m = 1", true},
        {"brauer-triangle", "Brauer graph: 3-cycle, m = 1", true},
        {"brauer-star", "Brauer tree: 3-star with exceptional centre of multiplicity 2", true},
        {"odd-loop", "single loop with d = 3: non-admissible, m = 3/2", false},
    };
    return cat;
}

RawGraph make_raw(const std::vector<VertexSpec>& vs, const std::vector<std::vector<std::string>>& pairs,
                  bool orbifold) {
    RawGraph raw;
    raw.orbifold = orbifold;
    for (auto& v : vs) {
        raw.vertices.push_back({v.id, v.degree});
        raw.rotation.emplace_back(v.id, v.rotation);
    }
    raw.pairing = pairs;
    return raw;
}

DegGraph load_deg(const RawGraph& raw) {
    std::vector<std::string> missing;
    for (auto& v : raw.vertices)
        if (!v.degree) missing.push_back("vertex '" + v.id + "' has no degree");
    RibbonGraph g = validate_ribbon(raw);
    if (!missing.empty()) throw Error(ErrorKind::StructureViolation, "degrees are required", missing);
    return {g, raw_degrees(raw, g)};
}

namespace {

RawGraph even_cycle(int k) {
    if (k < 1 || k > 50) throw Error(ErrorKind::MalformedInput, "even-cycle-2k needs 1 <= k <= 50");
    const int n = 2 * k;
    std::vector<VertexSpec> vs;
    std::vector<std::vector<std::string>> pairs;
    // edge e_i joins u_i and u_{i+1}: half e_i.a at u_i, e_i.b at u_{i+1}
    for (int i = 0; i < n; ++i) {
        std::string prev = "e" + std::to_string((i + n - 1) % n) + ".b";
        std::string out = "e" + std::to_string(i) + ".a";
        vs.push_back({"u" + std::to_string(i), 2, {out, prev}});
        pairs.push_back({out, "e" + std::to_string(i) + ".b"});
    }
    return make_raw(vs, pairs);
}

}  // namespace

RawGraph fixture_raw(const std::string& name) {
    if (name == "example1-preproj-a3")
        return make_raw({{"v", 2, {"1", "2", "3", "2'"}}, {"w", 1, {"1'", "3'"}}}, {{"1", "1'"}, {"2", "2'"}, {"3", "3'"}});
    if (name == "triangle-nakayama")
        return make_raw({{"v", 1, {"1", "2", "3"}}, {"w", 1, {"1'", "2'", "3'"}}}, {{"1", "1'"}, {"2", "2'"}, {"3", "3'"}});
    if (name == "kauer-gamma1")
        return make_raw({{"v1", 4, {"1", "2", "3", "4", "5", "6"}}, {"v2", 1, {"1'", "5'", "3'"}}, {"v3", 1, {"2'", "6'", "4'"}}},
                        {{"1", "1'"}, {"2", "2'"}, {"3", "3'"}, {"4", "4'"}, {"5", "5'"}, {"6", "6'"}});
    if (name == "kauer-gamma2")
        return make_raw({{"v1", 2, {"2", "4", "6"}}, {"v2", 1, {"1'", "5'", "3'"}}, {"v3", 2, {"3", "2'", "1", "6'", "5", "4'"}}},
                        {{"1", "1'"}, {"2", "2'"}, {"3", "3'"}, {"4", "4'"}, {"5", "5'"}, {"6", "6'"}});
    if (name == "brauer-path-3")
        return make_raw({{"p0", 1, {"a"}}, {"p1", 2, {"a'", "b"}}, {"p2", 2, {"b'", "c"}}, {"p3", 1, {"c'"}}},
                        {{"a", "a'"}, {"b", "b'"}, {"c", "c'"}});
    if (name == "brauer-triangle")
        return make_raw({{"t0", 2, {"a", "c'"}}, {"t1", 2, {"b", "a'"}}, {"t2", 2, {"c", "b'"}}},
                        {{"a", "a'"}, {"b", "b'"}, {"c", "c'"}});
    if (name == "brauer-star")
        return make_raw({{"c", 6, {"x", "y", "z"}}, {"lx", 1, {"x'"}}, {"ly", 1, {"y'"}}, {"lz", 1, {"z'"}}},
                        {{"x", "x'"}, {"y", "y'"}, {"z", "z'"}});
    if (name == "odd-loop") return make_raw({{"v", 3, {"a", "b"}}}, {{"a", "b"}});
    if (name == "even-cycle-2k") return even_cycle(2);
    if (name.rfind("even-cycle-2k:", 0) == 0) {
        try {
            return even_cycle(std::stoi(name.substr(14)));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::MalformedInput, "bad parameter in '" + name + "'");
        }
    }
    throw Error(ErrorKind::MalformedInput, "unknown fixture '" + name + "'");
}

DegGraph fixture(const std::string& name) { return load_deg(fixture_raw(name)); }
BiserialFBG fixture_fbg(const std::string& name) { return check_si(fixture(name)); }

namespace {

int unit_inverse(int a, int n) {
    for (int x = 1; x < n; ++x)
        if (a * x % n == 1) return x;
    return n == 1 ? 0 : -1;
}

std::vector<int> units(int n) {
    std::vector<int> u;
    for (int a = 0; a < n; ++a)
        if (std::gcd(a, n) == 1) u.push_back(n == 1 ? 0 : a);
    if (n == 1) u = {0};
    return u;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Random connected (orbifold) ribbon graph on nv vertices and nh half-edges.
std::optional<RibbonGraph> random_ribbon(std::mt19937_64& rng, int nv, int nh, bool allow_fixed) {
    if (nh < nv) return std::nullopt;
    std::vector<int> src(nh);
    for (int v = 0; v < nv; ++v) src[v] = v;
    for (int h = nv; h < nh; ++h) src[h] = uniform(rng, 0, nv - 1);
    std::shuffle(src.begin(), src.end(), rng);
    std::vector<std::vector<int>> rot(nv);
    for (int h = 0; h < nh; ++h) rot[src[h]].push_back(h);
    for (auto& r : rot) std::shuffle(r.begin(), r.end(), rng);

    std::vector<int> order(nh), iota(nh, -1);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    bool any_fixed = false;
    for (int i = 0; i < nh; ++i) {
        int h = order[i];
        if (iota[h] >= 0) continue;
        std::vector<int> free;
        for (int j = i + 1; j < nh; ++j)
            if (iota[order[j]] < 0) free.push_back(order[j]);
        if (free.empty() || (allow_fixed && uniform(rng, 0, 3) == 0)) {
            if (!allow_fixed) return std::nullopt;
            iota[h] = h;
            any_fixed = true;
            continue;
        }
        int x = pick(rng, free);
        iota[h] = x;
        iota[x] = h;
    }
    std::vector<std::string> vn, hn;
    for (int v = 0; v < nv; ++v) vn.push_back("v" + std::to_string(v));
    for (int h = 0; h < nh; ++h) hn.push_back("h" + std::to_string(h));
    RibbonGraph g = RibbonGraph::make(vn, hn, rot, iota, any_fixed);
    if (!g.connected()) return std::nullopt;
    return g;
}

}  // namespace

std::optional<BiserialFBG> random_cover_fbg(std::mt19937_64& rng, int max_edges) {
    const int n = uniform(rng, 1, 4);
    const int hb_max = std::min(6, 2 * max_edges / n);
    if (hb_max < 1) return std::nullopt;
    const int hb = uniform(rng, 1, hb_max);
    const int nv = uniform(rng, 1, std::min(3, hb));
    auto base = random_ribbon(rng, nv, hb, n % 2 == 0);
    if (!base) return std::nullopt;
    const RibbonGraph& og = *base;

    std::vector<int> volt(hb, 0);
    for (int x = 0; x < hb; ++x) {
        int y = og.iota(x);
        if (y == x)
            volt[x] = n / 2;
        else if (x < y) {
            volt[x] = uniform(rng, 0, n - 1);
            volt[y] = (n - volt[x]) % n;
        }
    }
    const auto us = units(n);
    const int c = pick(rng, us);
    std::vector<int> t(nv), F(nv);
    for (int v = 0; v < nv; ++v) {
        t[v] = pick(rng, us);
        int f = n == 1 ? 0 : c * unit_inverse(t[v], n) % n;
        F[v] = (f == 0 ? n : f) + (uniform(rng, 0, 2) == 0 ? n : 0);
    }
    // Γ half-edge (x, i) has pre-index x * n + i
    std::vector<std::string> vn, hn;
    for (int v = 0; v < nv; ++v) vn.push_back(og.vertex_name(v));
    for (int x = 0; x < hb; ++x)
        for (int i = 0; i < n; ++i) hn.push_back(og.half_name(x) + "_" + std::to_string(i));
    std::vector<std::vector<int>> rot(nv);
    for (int v = 0; v < nv; ++v) {
        const auto& r = og.rotation(v);
        for (int lap = 0, i = 0; lap < n; ++lap, i = (i + t[v]) % n)
            for (int x : r) rot[v].push_back(x * n + i);
    }
    std::vector<int> iota(hb * n);
    for (int x = 0; x < hb; ++x)
        for (int i = 0; i < n; ++i) iota[x * n + i] = og.iota(x) * n + (i + volt[x]) % n;
    RibbonGraph g = RibbonGraph::make(vn, hn, rot, iota, false);
    std::vector<int> d(nv);
    for (int v = 0; v < nv; ++v) d[g.find_vertex(vn[v])] = F[v] * og.val(v);
    return check_si(g, d);  // throws on a construction bug
}

std::optional<BiserialFBG> random_direct_fbg(std::mt19937_64& rng, int max_edges, int tries) {
    // size first, so that the rarer large successes are not crowded out by small ones
    const int ne = uniform(rng, 1, std::min(max_edges, 6));
    for (int t = 0; t < tries; ++t) {
        int nv = uniform(rng, 1, std::min(4, 2 * ne));
        auto g = random_ribbon(rng, nv, 2 * ne, false);
        if (!g) continue;
        std::vector<int> d(nv);
        // d a multiple of val makes ν trivial at v; (SI) then holds far more often
        for (int v = 0; v < nv; ++v)
            d[v] = uniform(rng, 0, 2) == 0 ? g->val(v) * uniform(rng, 1, 2) : uniform(rng, 1, 2 * g->val(v));
        try {
            return check_si(*g, d);
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

std::vector<BiserialFBG> random_corpus(uint64_t seed, int count, int max_edges) {
    std::mt19937_64 rng(seed);
    std::vector<BiserialFBG> out;
    for (int i = 0; static_cast<int>(out.size()) < count && i < 100 * count; ++i) {
        auto f = (i % 2 == 0) ? random_cover_fbg(rng, max_edges) : random_direct_fbg(rng, max_edges);
        if (f && f->graph().num_edges() <= max_edges) out.push_back(*f);
    }
    return out;
}

}  // namespace fbga
