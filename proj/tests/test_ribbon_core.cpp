#include "test_helpers.hpp"

#include <doctest.h>

using namespace fbga;

TEST_SUITE("ribbon_core") {

TEST_CASE("example-1 graph: rotation, edges, valencies") {
    RibbonGraph g = validate_ribbon(fixture_raw("example1-preproj-a3"));
    CHECK(g.num_vertices() == 2);
    CHECK(g.num_half_edges() == 6);
    CHECK(g.num_edges() == 3);
    CHECK(g.val(g.find_vertex("v")) == 4);
    CHECK(g.val(g.find_vertex("w")) == 2);
    CHECK(g.rho(g.half("1")) == g.half("2"));
    CHECK(g.rho(g.half("2'")) == g.half("1"));
    CHECK(g.rho(g.half("1"), -1) == g.half("2'"));
    CHECK(g.offset(g.half("1"), g.half("3")) == 2);
    CHECK(g.edge_name(g.edge_of(g.half("1'"))) == "1|1'");
    CHECK(g.find_edge("3'") == g.find_edge("3|3'"));
    CHECK(g.is_loop(g.find_edge("2")));
    CHECK_FALSE(g.is_loop(g.find_edge("1")));
    CHECK(g.connected());
    for (int h = 0; h < g.num_half_edges(); ++h) {
        CHECK(g.rho(h, 0) == h);
        CHECK(g.rho(h, g.val(g.source(h))) == h);
        CHECK(g.iota(g.iota(h)) == h);
    }
}

TEST_CASE("indices follow name order") {
    RibbonGraph g = validate_ribbon(fixture_raw("kauer-gamma1"));
    for (int h = 0; h + 1 < g.num_half_edges(); ++h) CHECK(g.half_name(h) < g.half_name(h + 1));
    for (int v = 0; v + 1 < g.num_vertices(); ++v) CHECK(g.vertex_name(v) < g.vertex_name(v + 1));
}

TEST_CASE("smallest loop graph") {
    RibbonGraph g = validate_ribbon(make_raw({{"v", 1, {"a", "b"}}}, {{"a", "b"}}));
    CHECK(g.num_edges() == 1);
    CHECK(g.val(0) == 2);
    CHECK(g.edge_name(0) == "a|b");
}

TEST_CASE("structure violations are all reported") {
    RawGraph raw = make_raw({{"v", 1, {"a", "b", "a"}}, {"v", 1, {"c"}}}, {{"a", "zz"}, {"c"}});
    try {
        validate_ribbon(raw);
        FAIL("accepted a broken graph");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::StructureViolation);
        CHECK(e.violations().size() >= 3);
    }
}

TEST_CASE("fixed point in a plain graph is rejected") {
    RawGraph raw = make_raw({{"v", 1, {"a", "b"}}}, {{"a"}, {"b"}});
    CHECK_THROWS_AS(validate_ribbon(raw), Error);
    raw.orbifold = true;
    RibbonGraph g = validate_ribbon(raw);
    CHECK(g.orbifold());
    CHECK(g.fixed(g.half("a")));
    CHECK(g.edge_name(g.find_edge("a")) == "a");
}

TEST_CASE("two components") {
    RibbonGraph g = validate_ribbon(make_raw({{"u", 1, {"a", "b"}}, {"w", 1, {"c", "d"}}}, {{"a", "b"}, {"c", "d"}}));
    CHECK_FALSE(g.connected());
    auto c = g.components();
    CHECK(c[0] != c[1]);
}

TEST_CASE("rational formatting keeps p/q") {
    CHECK(to_string(Rational(2, 4)) == "1/2");
    CHECK(to_string(Rational(3)) == "3/1");
}

TEST_CASE("to_raw round trip") {
    BiserialFBG f = fixture_fbg("kauer-gamma2");
    DegGraph back = load_deg(f.graph().to_raw(&f.degrees()));
    CHECK(back.g.rotations() == f.graph().rotations());
    CHECK(back.g.iotas() == f.graph().iotas());
    CHECK(back.d == f.degrees());
}

TEST_CASE("isomorphism: identity and relabelings") {
    std::mt19937_64 rng(7);
    for (const auto& f : th::catalog()) {
        auto id = graph_isomorphic(f.graph(), f.graph(), &f.degrees(), &f.degrees());
        REQUIRE(id);
        for (int h = 0; h < f.graph().num_half_edges(); ++h) CHECK(id->hmap[h] == h);

        DegGraph r = th::relabel(f.as_deg(), rng);
        auto iso = graph_isomorphic(f.graph(), r.g, &f.degrees(), &r.d);
        REQUIRE(iso);
        for (int h = 0; h < f.graph().num_half_edges(); ++h) {
            CHECK(iso->hmap[f.graph().rho(h)] == r.g.rho(iso->hmap[h]));
            CHECK(iso->hmap[f.graph().iota(h)] == r.g.iota(iso->hmap[h]));
            CHECK(r.g.source(iso->hmap[h]) == iso->vmap[f.graph().source(h)]);
        }
    }
}

TEST_CASE("isomorphism agrees with a search over all bijections") {
    auto corpus = random_corpus(3, 80, 3);
    int same = 0, differ = 0;
    for (size_t i = 0; i < corpus.size(); ++i)
        for (size_t j = i; j < corpus.size(); ++j) {
            const auto &a = corpus[i], &b = corpus[j];
            if (a.graph().num_half_edges() != b.graph().num_half_edges() || a.graph().num_half_edges() > 6) continue;
            bool brute = th::brute_isomorphic(a.as_deg(), b.as_deg());
            bool fast = graph_isomorphic(a.graph(), b.graph(), &a.degrees(), &b.degrees()).has_value();
            CHECK(brute == fast);
            (brute ? same : differ)++;
        }
    CHECK(same > 0);
    CHECK(differ > 0);
}

TEST_CASE("reversing one asymmetric rotation breaks isomorphism") {
    // three edges between two vertices, one rotation reversed: the brute search decides
    DegGraph a = load_deg(make_raw({{"u", 1, {"1", "2", "3", "4"}}, {"w", 1, {"1'", "2'"}}, {"x", 1, {"3'", "4'"}}},
                                   {{"1", "1'"}, {"2", "2'"}, {"3", "3'"}, {"4", "4'"}}));
    DegGraph b = load_deg(make_raw({{"u", 1, {"1", "3", "2", "4"}}, {"w", 1, {"1'", "2'"}}, {"x", 1, {"3'", "4'"}}},
                                   {{"1", "1'"}, {"2", "2'"}, {"3", "3'"}, {"4", "4'"}}));
    bool brute = th::brute_isomorphic(a, b);
    CHECK(graph_isomorphic(a.g, b.g, &a.d, &b.d).has_value() == brute);
    CHECK_FALSE(brute);
}

TEST_CASE("degrees take part in isomorphism") {
    BiserialFBG f = fixture_fbg("brauer-star");
    std::vector<int> d = f.degrees();
    for (int& x : d) x *= 2;
    CHECK(graph_isomorphic(f.graph(), f.graph()).has_value());
    CHECK_FALSE(graph_isomorphic(f.graph(), f.graph(), &f.degrees(), &d).has_value());
}

TEST_CASE("isomorphism size limit") {
    BiserialFBG f = fixture_fbg("kauer-gamma1");
    try {
        graph_isomorphic(f.graph(), f.graph(), nullptr, nullptr, 4);
        FAIL("no limit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SizeLimitExceeded);
    }
}

TEST_CASE("dot export") {
    BiserialFBG f = fixture_fbg("example1-preproj-a3");
    std::string dot = to_dot(f.graph(), &f.degrees());
    CHECK(dot.find("\"v\" [") != std::string::npos);
    CHECK(dot.find("\"w\" [") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '\n') == 2 + 2 + 3 + 1);

    RibbonGraph og = orbit_graph(f).dg.g;
    std::string odot = to_dot(og);
    CHECK(odot.find("×") != std::string::npos);
    CHECK(odot.find(" -- ") != std::string::npos);
}

}  // TEST_SUITE
