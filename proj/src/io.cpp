#include "fbga/io.hpp"

#include "fbga/fixtures.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace fbga {

namespace {

[[noreturn]] void malformed(const std::string& why, std::vector<std::string> v = {}) {
    throw Error(ErrorKind::MalformedInput, why, std::move(v));
}

void only_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    std::vector<std::string> bad;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) bad.push_back("unknown key '" + it.key() + "' in " + where);
    if (!bad.empty()) malformed("unknown keys", bad);
}

std::string str(const Json& j, const std::string& where) {
    if (!j.is_string() || j.get<std::string>().empty()) malformed(where + " must be a nonempty string");
    return j.get<std::string>();
}

}  // namespace

RawGraph parse_graph(const Json& j) {
    if (!j.is_object()) malformed("graph must be a JSON object");
    only_keys(j, {"vertices", "rotation", "pairing", "orbifold"}, "graph");
    for (const char* k : {"vertices", "rotation", "pairing"})
        if (!j.contains(k)) malformed(std::string("missing key '") + k + "'");

    RawGraph raw;
    if (j.contains("orbifold")) {
        if (!j["orbifold"].is_boolean()) malformed("'orbifold' must be a boolean");
        raw.orbifold = j["orbifold"].get<bool>();
    }
    if (!j["vertices"].is_array()) malformed("'vertices' must be an array");
    for (const Json& v : j["vertices"]) {
        if (!v.is_object()) malformed("vertex entries must be objects");
        only_keys(v, {"id", "degree"}, "vertex");
        if (!v.contains("id")) malformed("vertex without 'id'");
        RawGraph::Vertex rv{str(v["id"], "vertex id"), std::nullopt};
        if (v.contains("degree")) {
            if (!v["degree"].is_number_integer() || v["degree"].get<long long>() < 1 || v["degree"].get<long long>() > 1'000'000)
                malformed("degree of '" + rv.id + "' must be a positive integer");
            rv.degree = v["degree"].get<int>();
        }
        raw.vertices.push_back(rv);
    }
    if (!j["rotation"].is_object()) malformed("'rotation' must be an object");
    for (auto it = j["rotation"].begin(); it != j["rotation"].end(); ++it) {
        if (!it.value().is_array()) malformed("rotation of '" + it.key() + "' must be an array");
        std::vector<std::string> r;
        for (const Json& h : it.value()) r.push_back(str(h, "half-edge id"));
        raw.rotation.emplace_back(it.key(), std::move(r));
    }
    if (!j["pairing"].is_array()) malformed("'pairing' must be an array");
    for (const Json& p : j["pairing"]) {
        if (!p.is_array() || p.empty() || p.size() > 2) malformed("pairing entries must be lists of one or two ids");
        std::vector<std::string> e;
        for (const Json& h : p) e.push_back(str(h, "half-edge id"));
        raw.pairing.push_back(std::move(e));
    }
    return raw;
}

RawGraph parse_graph_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
    return parse_graph(j);
}

RawGraph load_input(const std::string& where) {
    const std::string pre = "fixtures:";
    if (where.rfind(pre, 0) == 0) return fixture_raw(where.substr(pre.size()));
    std::ifstream in(where);
    if (!in) malformed("cannot read '" + where + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_graph_text(ss.str());
}

Json graph_json(const RibbonGraph& g, const std::vector<int>* degrees) {
    Json j;
    j["vertices"] = Json::array();
    j["rotation"] = Json::object();
    for (int v = 0; v < g.num_vertices(); ++v) {
        Json vj{{"id", g.vertex_name(v)}};
        if (degrees) vj["degree"] = (*degrees)[v];
        j["vertices"].push_back(vj);
        Json r = Json::array();
        for (int h : g.rotation(v)) r.push_back(g.half_name(h));
        j["rotation"][g.vertex_name(v)] = r;
    }
    j["pairing"] = Json::array();
    for (const Edge& e : g.edges()) {
        if (e.orbifold())
            j["pairing"].push_back({g.half_name(e.a)});
        else
            j["pairing"].push_back({g.half_name(e.a), g.half_name(e.b)});
    }
    j["orbifold"] = g.orbifold();
    return j;
}

Json graph_json(const BiserialFBG& f) { return graph_json(f.graph(), &f.degrees()); }
Json graph_json(const DegGraph& dg) { return graph_json(dg.g, &dg.d); }

Json error_json(const Error& e) {
    return {{"error", kind_name(e.kind())}, {"message", e.what()}, {"violations", e.violations()}};
}

Json invariants_json(const BiserialFBG& f) {
    const RibbonGraph& g = f.graph();
    auto inv = vertex_invariants(f);
    Json out = Json::array();
    for (int v = 0; v < g.num_vertices(); ++v)
        out.push_back({{"vertex", g.vertex_name(v)},
                       {"val", inv[v].val},
                       {"o", inv[v].o},
                       {"n", inv[v].n},
                       {"F", inv[v].F},
                       {"m", to_string(inv[v].m)}});
    return out;
}

Json orbits_json(const BiserialFBG& f) {
    const RibbonGraph& g = f.graph();
    auto nk = nakayama(f);
    Json out = Json::array();
    for (const auto& orb : nk.edge_orbits) {
        Json edges = Json::array();
        for (int e : orb) edges.push_back(g.edge_name(e));
        out.push_back({{"edges", edges}, {"case", case_name(classify_nu_orbit(f, orb))}});
    }
    return out;
}

Json quiver_json(const Quiver& q, const DimReport* dims, const RibbonGraph* g) {
    Json j;
    j["vertices"] = q.vertices;
    j["arrows"] = Json::array();
    for (const Arrow& a : q.arrows)
        j["arrows"].push_back({{"id", a.id},
                               {"from", q.vertices[a.from]},
                               {"to", q.vertices[a.to]},
                               {"half_edge", a.half},
                               {"signs", a.sign_in + a.sign_out}});
    Json rel{{"commutativity", Json::array()}, {"zero", Json::array()}, {"nilpotency", Json::array()},
             {"skew", Json::object()}};
    for (const Relation& r : q.relations) {
        Json terms = Json::array();
        for (const auto& w : r.terms) {
            Json word = Json::array();
            for (int a : w) word.push_back(q.arrows[a].id);
            terms.push_back(word);
        }
        if (r.family.rfind("skew-", 0) == 0) {
            if (!rel["skew"].contains(r.family)) rel["skew"][r.family] = Json::array();
            rel["skew"][r.family].push_back(terms);
        } else {
            if (!rel.contains(r.family)) rel[r.family] = Json::array();
            rel[r.family].push_back(terms);
        }
    }
    j["relations"] = rel;
    if (dims) {
        Json d{{"total", dims->total}};
        Json proj = Json::object();
        for (size_t e = 0; e < dims->projective.size(); ++e)
            proj[g ? g->edge_name(static_cast<int>(e)) : std::to_string(e)] = dims->projective[e];
        d["projective"] = proj;
        d["hom"] = dims->hom;
        j["dim"] = d;
    }
    return j;
}

Json reduced_json(const ReducedForm& r) {
    const RibbonGraph& og = r.og.dg.g;
    Json fixed = Json::array();
    for (const Edge& e : og.edges())
        if (e.orbifold()) fixed.push_back(og.half_name(e.a));
    Json mult = Json::object();
    for (int v = 0; v < r.dg.g.num_vertices(); ++v)
        mult[r.dg.g.vertex_name(v)] = to_string(Rational(r.dg.d[v], r.dg.g.val(v)));
    return {{"admissible", r.admissible},
            {"orbifold_edges", fixed},
            {"reduced_multiplicities", mult},
            {"brauer_tree", is_brauer_tree(r.dg)},
            {"orbit_graph", graph_json(r.og.dg)},
            {"reduced", graph_json(r.dg)}};
}

Json walk_json(const WalkSpace& s, const SignedWalk& w) {
    Json h = Json::array(), sg = Json::array();
    for (int i = 0; i < w.size(); ++i) {
        h.push_back(s.g.half_name(w.h[i]));
        sg.push_back(w.sign(i) > 0 ? "+" : "-");
    }
    return {{"halves", h}, {"signs", sg}, {"text", to_string(s, w)}};
}

Json census_json(const CycleCensus& c) {
    return {{"vertices", c.vertices},         {"edges", c.edges},
            {"components", c.components},     {"betti", c.betti},
            {"is_tree", c.is_tree},           {"odd_cycles", c.odd_cycles},
            {"even_cycles", c.even_cycles},   {"at_most_one_odd_no_even", c.at_most_one_odd_no_even}};
}

Json set_counts_json(const SetCounts& c) {
    return {{"max_len", c.max_len},
            {"walks", c.walks},
            {"admissible", c.admissible},
            {"complete", c.complete},
            {"complete_and_stable", c.complete_and_stable},
            {"truncated", c.truncated}};
}

Json mutation_json(const MutationResult& m) {
    const RibbonGraph& g = m.fbg.graph();
    Json orbit = Json::array();
    for (int e : m.orbit) orbit.push_back(g.edge_name(e));
    Json trace = Json::array();
    for (const TraceEntry& t : m.trace)
        trace.push_back({{"half_edge", t.half},
                         {"from", {{"vertex", t.from_vertex}, {"position", t.from_pos}}},
                         {"to", {{"vertex", t.to_vertex}, {"position", t.to_pos}}}});
    return {{"direction", direction_name(m.dir)},
            {"orbit", orbit},
            {"case", case_name(m.which)},
            {"hypotheses_ok", m.hypotheses_ok},
            {"extended", m.extended},
            {"trace", trace},
            {"graph", graph_json(m.fbg)},
            {"invariants", invariants_json(m.fbg)}};
}

}  // namespace fbga
