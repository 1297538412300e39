#include "string_complex_oracle.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace fbga;

namespace {

struct Agreement {
    int pairs = 0, wrong = 0;
    std::string first;
};

std::vector<std::vector<bool>> oracle_matrix(const BiserialFBG& f, const WalkUniverse& u) {
    oracle::BrauerAlgebra A(f.graph(), f.degrees());
    std::vector<oracle::Complex> cx;
    for (const auto& w : u.walks) cx.push_back(oracle::string_complex(f.graph(), w));
    const size_t n = u.walks.size();
    std::vector<std::vector<bool>> O(n, std::vector<bool>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) O[i][j] = O[j][i] = oracle::presilting_pair(A, cx[i], cx[j]);
    return O;
}

// Same ribbon graphs as a corpus, with degrees made multiples of the valency.
std::vector<BiserialFBG> brauer_pool(uint64_t seed, int count, int max_edges) {
    std::mt19937_64 rng(seed);
    std::vector<BiserialFBG> out;
    for (const auto& f : random_corpus(seed, count, max_edges)) {
        if (f.graph().orbifold()) continue;
        std::vector<int> d(f.graph().num_vertices());
        for (int v = 0; v < f.graph().num_vertices(); ++v) d[v] = f.graph().val(v) * (rng() % 3 == 0 ? 2 : 1);
        out.push_back(check_si(f.graph(), d));
    }
    return out;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("string complexes of single edges") {
    BiserialFBG f = th::path(1);
    WalkSpace s = walk_space(f);
    for (const auto& w : enumerate_signed_walks(s, 1)) {
        auto c = oracle::string_complex(f.graph(), w);
        CHECK(c.x1.size() + c.x0.size() == 1);
    }
}

TEST_CASE("rank mod p") {
    CHECK(oracle::rank_mod_p({{1, 2}, {2, 4}}) == 1);
    CHECK(oracle::rank_mod_p({{1, 0}, {0, 1}}) == 2);
    CHECK(oracle::rank_mod_p({}) == 0);
}

TEST_CASE("pairwise compatibility is presilting on Brauer graphs") {
    for (bool strict : {false, true}) {
        Agreement a;
        for (const auto& f : brauer_pool(strict ? 97 : 101, 50, 4)) {
            WalkUniverse u = build_universe(walk_space(f, strict), std::min(2 * f.graph().num_edges(), 5));
            auto O = oracle_matrix(f, u);
            for (size_t i = 0; i < u.walks.size(); ++i) {
                CHECK(O[i][i]);
                for (size_t j = i + 1; j < u.walks.size(); ++j) {
                    ++a.pairs;
                    if (u.compat_at(static_cast<int>(i), static_cast<int>(j)) == O[i][j]) continue;
                    if (!a.wrong++)
                        a.first = to_string(u.space, u.walks[i]) + " vs " + to_string(u.space, u.walks[j]);
                }
            }
        }
        INFO("first disagreement: " << a.first);
        CHECK(a.wrong == 0);
        CHECK(a.pairs > 1000);
    }
}

TEST_CASE("nu-orbit compatibility is presilting on biserial FBGs") {
    auto pool = th::catalog();
    for (auto& f : random_corpus(103, 50, 5)) pool.push_back(std::move(f));
    Agreement a;
    for (const auto& f : pool) {
        WalkUniverse u = build_universe(walk_space(f), std::min(2 * f.graph().num_edges(), 5));
        auto O = oracle_matrix(f, u);
        auto orbs = walk_orbits(walk_action(u, f.nu_perm()));
        auto all = [&](auto&& rel, size_t p, size_t q) {
            for (int i : orbs[p])
                for (int j : orbs[q])
                    if (!rel(i, j)) return false;
            return true;
        };
        auto mine = [&](int i, int j) { return i == j || u.compat_at(i, j); };
        auto theirs = [&](int i, int j) { return bool(O[i][j]); };
        for (size_t p = 0; p < orbs.size(); ++p)
            for (size_t q = p; q < orbs.size(); ++q) {
                ++a.pairs;
                if (all(mine, p, q) == all(theirs, p, q)) continue;
                if (!a.wrong++)
                    a.first = to_string(u.space, u.walks[orbs[p][0]]) + " vs " + to_string(u.space, u.walks[orbs[q][0]]);
            }
    }
    INFO("first disagreement: " << a.first);
    CHECK(a.wrong == 0);
    CHECK(a.pairs > 1000);
}

TEST_CASE("maximal counts on a known graph") {
    // path of 3: the 20 two-term tilting complexes
    BiserialFBG f = th::path(3);
    WalkUniverse u = build_universe(walk_space(f), 6);
    auto O = oracle_matrix(f, u);
    CHECK(oracle::count_maximal(O) == 20);
}

}  // TEST_SUITE
