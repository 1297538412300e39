// fbga: command-line front end.
// Exit codes: 0 ok, 1 domain error (JSON on stderr), 2 usage error.

#include "fbga/fixtures.hpp"
#include "fbga/io.hpp"
#include "fbga/service.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace fbga;

namespace {

struct Opts {
    std::string format = "text";
    std::string input;
    // quiver / dot
    std::string presentation = "admissible";
    bool skew = false, dims = false, as_quiver = false;
    // reduce
    std::string orbit_out, reduced_out;
    // mutate
    std::string orbit, halves, dir = "left", out;
    // walks
    int max_len = 0;
    long long max_count = 0;
    bool nu_stable = false, complete = false, via_reduced = false, strict = false;
    // serve
    int port = 8080;
    std::string host = "127.0.0.1";
    bool cors = false;
    size_t sessions = 64;
};

bool json_out(const Opts& o) { return o.format == "json"; }

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const Json& j) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::MalformedInput, "cannot write '" + path + "'");
    f << j.dump(2) << "\n";
}

BiserialFBG load_fbg(const std::string& in) { return check_si(load_deg(load_input(in))); }

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, ',');)
        if (!t.empty()) out.push_back(t);
    return out;
}

int cmd_validate(const Opts& o) {
    RawGraph raw = load_input(o.input);
    RibbonGraph g = validate_ribbon(raw);
    bool has_deg = true;
    for (auto& v : raw.vertices) has_deg = has_deg && v.degree.has_value();
    Json j{{"valid", true}, {"vertices", g.num_vertices()}, {"edges", g.num_edges()}, {"orbifold", g.orbifold()}};
    std::optional<BiserialFBG> f;
    if (has_deg && !g.orbifold()) {
        f = check_si(g, raw_degrees(raw, g));
        j["biserial"] = true;
        j["brauer_graph"] = is_brauer_graph(*f);
    }
    if (json_out(o)) {
        emit(j);
    } else {
        std::cout << "valid: " << g.num_vertices() << " vertices, " << g.num_edges() << " edges"
                  << (g.orbifold() ? ", orbifold" : "") << (f ? ", (SI) holds" : "")
                  << (f && is_brauer_graph(*f) ? ", Brauer graph" : "") << "\n";
    }
    return 0;
}

int cmd_invariants(const Opts& o) {
    BiserialFBG f = load_fbg(o.input);
    Json inv = invariants_json(f);
    if (json_out(o)) {
        emit({{"invariants", inv}, {"nu_order", f.nu_order()}, {"admissible", is_admissible(f).admissible},
              {"nu_orbits", orbits_json(f)}});
        return 0;
    }
    std::cout << std::left << std::setw(10) << "vertex" << std::setw(6) << "val" << std::setw(5) << "o" << std::setw(5)
              << "n" << std::setw(5) << "F"
              << "m\n";
    for (const Json& r : inv)
        std::cout << std::setw(10) << r["vertex"].get<std::string>() << std::setw(6) << r["val"].get<int>() << std::setw(5)
                  << r["o"].get<int>() << std::setw(5) << r["n"].get<int>() << std::setw(5) << r["F"].get<int>()
                  << r["m"].get<std::string>() << "\n";
    std::cout << "nu order " << f.nu_order() << ", " << (is_admissible(f).admissible ? "admissible" : "not admissible")
              << "\n";
    return 0;
}

int cmd_quiver(const Opts& o) {
    Quiver q;
    std::optional<DimReport> d;
    std::optional<BiserialFBG> f;
    if (o.skew) {
        q = build_skew_quiver(load_deg(load_input(o.input)));
    } else {
        f = load_fbg(o.input);
        q = build_quiver(*f, o.presentation == "two-regular" ? Presentation::TwoRegular : Presentation::Admissible);
        d = dim_report(*f);
    }
    if (json_out(o)) {
        emit(quiver_json(q, d ? &*d : nullptr, f ? &f->graph() : nullptr));
        return 0;
    }
    std::cout << q.vertices.size() << " vertices, " << q.arrows.size() << " arrows\n";
    for (const Arrow& a : q.arrows)
        std::cout << "  " << a.id << ": " << q.vertices[a.from] << " -> " << q.vertices[a.to] << "\n";
    for (auto& [fam, n] : q.family_counts()) std::cout << "  " << fam << ": " << n << "\n";
    if (d) std::cout << "dim " << d->total << "\n";
    return 0;
}

int cmd_reduce(const Opts& o) {
    ReducedForm r = reduced_form(load_fbg(o.input));
    Json j = reduced_json(r);
    if (!o.orbit_out.empty()) write_file(o.orbit_out, j["orbit_graph"]);
    if (!o.reduced_out.empty()) write_file(o.reduced_out, j["reduced"]);
    if (json_out(o)) {
        emit(j);
        return 0;
    }
    std::cout << (r.admissible ? "admissible" : "not admissible") << "; orbit graph: " << r.og.dg.g.num_vertices()
              << " vertices, " << r.og.dg.g.num_edges() << " edges (" << j["orbifold_edges"].size()
              << " orbifold); reduced form: " << r.dg.g.num_vertices() << " vertices, " << r.dg.g.num_edges() << " edges"
              << (is_brauer_tree(r.dg) ? ", a Brauer tree" : "") << "\n";
    for (auto it = j["reduced_multiplicities"].begin(); it != j["reduced_multiplicities"].end(); ++it)
        std::cout << "  m(" << it.key() << ") = " << it.value().get<std::string>() << "\n";
    return 0;
}

int cmd_mutate(const Opts& o) {
    if (o.orbit.empty() == o.halves.empty()) throw CLI::ValidationError("give exactly one of --orbit and --halves");
    Direction dir = o.dir == "left" ? Direction::Left : Direction::Right;
    RawGraph raw = load_input(o.input);
    if (raw.orbifold) {
        if (o.orbit.empty()) throw CLI::ValidationError("orbifold input takes --orbit <edge>");
        DegGraph og = load_deg(raw);
        int e = og.g.find_edge(o.orbit);
        if (e < 0) throw Error(ErrorKind::UnknownEdge, "unknown edge '" + o.orbit + "'");
        DegGraph moved = kauer_move_orbifold(og, e, dir);
        Json j = graph_json(moved);
        if (!o.out.empty()) write_file(o.out, j);
        if (json_out(o) || o.out.empty()) emit(j);
        return 0;
    }
    BiserialFBG f = check_si(load_deg(raw));
    std::optional<MutationResult> res;
    if (!o.orbit.empty()) {
        int e = f.graph().find_edge(o.orbit);
        if (e < 0) throw Error(ErrorKind::UnknownEdge, "unknown edge '" + o.orbit + "'");
        res = kauer_move(f, edge_orbit_of(f, e), dir);
    } else {
        std::vector<int> hs;
        for (const auto& h : split(o.halves)) hs.push_back(f.graph().half(h));
        res = generalized_kauer_move(f, hs, dir);
    }
    const MutationResult& m = *res;
    Json j = mutation_json(m);
    if (!o.out.empty()) write_file(o.out, j["graph"]);
    if (json_out(o)) {
        emit(j);
        return 0;
    }
    std::cout << direction_name(m.dir) << " move at {";
    for (size_t i = 0; i < j["orbit"].size(); ++i) std::cout << (i ? ", " : "") << j["orbit"][i].get<std::string>();
    std::cout << "}: " << case_name(m.which) << (m.extended ? " (extended)" : "") << "\n";
    for (const Json& t : j["trace"])
        std::cout << "  " << t["half_edge"].get<std::string>() << ": " << t["from"]["vertex"].get<std::string>() << "@"
                  << t["from"]["position"].get<int>() << " -> " << t["to"]["vertex"].get<std::string>() << "@"
                  << t["to"]["position"].get<int>() << "\n";
    for (const Json& r : j["invariants"])
        std::cout << "  m(" << r["vertex"].get<std::string>() << ") = " << r["m"].get<std::string>() << "\n";
    return 0;
}

int cmd_walks(const Opts& o) {
    BiserialFBG f = load_fbg(o.input);
    long long cap = o.max_count > 0 ? o.max_count : max_count_default();
    int L = o.max_len > 0 ? o.max_len : 2 * f.graph().num_edges();
    WalkUniverse u = build_universe(walk_space(f, o.strict), L);
    Json j{{"max_len", L}, {"max_count", cap}, {"strict", o.strict}};
    Json ws = Json::array();
    for (const auto& w : u.walks) ws.push_back(walk_json(u.space, w));
    j["walks"] = ws;
    j["counts"] = set_counts_json(count_sets(u, {}, cap));
    if (o.nu_stable) j["nu_stable"] = set_counts_json(count_sets(u, walk_action(u, f.nu_perm()), cap));
    if (o.complete) {
        CliqueList cl = complete_sets(u, cap);
        Json sets = Json::array();
        for (const auto& c : cl.cliques) {
            Json s = Json::array();
            for (int i : c) s.push_back(to_string(u.space, u.walks[i]));
            sets.push_back(s);
        }
        j["complete_sets"] = sets;
        j["complete_truncated"] = cl.truncated;
    }
    if (o.via_reduced) {
        PsiReport p = bijection_psi(f, L, o.strict, cap);
        j["via_reduced"] = {{"admissible", p.admissible},   {"source_orbits", p.source_orbits},
                            {"target_orbits", p.target_orbits}, {"bijective", p.bijective},
                            {"preserves_compat", p.preserves_compat}, {"source", set_counts_json(p.source)},
                            {"target", set_counts_json(p.target)}};
    }
    if (json_out(o)) {
        emit(j);
        return 0;
    }
    std::cout << u.walks.size() << " signed walks up to length " << L << "\n";
    for (const auto& w : u.walks) std::cout << "  " << to_string(u.space, w) << "\n";
    auto line = [](const char* what, const Json& c) {
        std::cout << what << ": admissible " << c["admissible"].get<long long>() << ", complete "
                  << c["complete"].get<long long>() << (c["truncated"].get<bool>() ? " (truncated)" : "") << "\n";
    };
    line("all sets", j["counts"]);
    if (o.nu_stable) line("nu-stable sets", j["nu_stable"]);
    if (o.complete)
        for (const Json& s : j["complete_sets"]) {
            std::cout << "  {";
            for (size_t i = 0; i < s.size(); ++i) std::cout << (i ? ", " : "") << s[i].get<std::string>();
            std::cout << "}\n";
        }
    if (o.via_reduced) {
        const Json& p = j["via_reduced"];
        std::cout << "psi: " << p["source_orbits"].get<int>() << " orbits -> " << p["target_orbits"].get<int>()
                  << (p["bijective"].get<bool>() ? ", bijective" : ", NOT bijective")
                  << (p["preserves_compat"].get<bool>() ? ", preserves compatibility" : "") << "\n";
        line("  stable on the graph", p["source"]);
        line("  on the reduced form", p["target"]);
    }
    return 0;
}

int cmd_tilt(const Opts& o) {
    BiserialFBG f = load_fbg(o.input);
    TiltDiscrete t = tilting_discrete(f);
    if (json_out(o)) {
        ReducedForm r = reduced_form(f);
        Json red = reduced_json(r);
        red.erase("orbit_graph");
        emit({{"discrete", t.discrete}, {"reason", t.reason}, {"census", census_json(t.census)}, {"reduced", red}});
        return 0;
    }
    std::cout << (t.discrete ? "true" : "false") << " (" << t.reason << ")\n";
    const auto& c = t.census;
    std::cout << "reduced form: " << c.vertices << " vertices, " << c.edges << " edges, betti " << c.betti << ", "
              << c.odd_cycles << " odd / " << c.even_cycles << " even simple cycles\n";
    return 0;
}

int cmd_dot(const Opts& o) {
    RawGraph raw = load_input(o.input);
    if (o.as_quiver) {
        BiserialFBG f = check_si(load_deg(raw));
        std::cout << to_dot(build_quiver(f, Presentation::Admissible));
        return 0;
    }
    RibbonGraph g = validate_ribbon(raw);
    std::vector<int> d = raw_degrees(raw, g);
    bool has = std::all_of(d.begin(), d.end(), [](int x) { return x > 0; });
    std::cout << to_dot(g, has ? &d : nullptr);
    return 0;
}

int cmd_fixtures(const Opts& o) {
    Json arr = Json::array();
    for (const auto& fi : fixture_catalog()) arr.push_back({{"name", fi.name}, {"summary", fi.summary}});
    if (json_out(o)) {
        emit(arr);
        return 0;
    }
    for (const auto& fi : fixture_catalog()) std::cout << std::left << std::setw(22) << fi.name << fi.summary << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fbga: biserial fractional Brauer graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Opts o;
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));

    auto input = [&](CLI::App* s) { s->add_option("input", o.input, "graph file or fixtures:<name>")->required(); };
    auto* validate = app.add_subcommand("validate", "check the ribbon structure and (SI)");
    input(validate);
    auto* inv = app.add_subcommand("invariants", "o, n, F, m per vertex");
    input(inv);
    auto* quiver = app.add_subcommand("quiver", "quiver with relations");
    input(quiver);
    quiver->add_option("--presentation", o.presentation)->check(CLI::IsMember({"admissible", "two-regular"}));
    quiver->add_flag("--skew", o.skew, "input is an orbifold graph: build the skew-BGA quiver");
    auto* reduce = app.add_subcommand("reduce", "orbit graph and reduced form");
    input(reduce);
    reduce->add_option("--orbit-graph-out", o.orbit_out);
    reduce->add_option("--reduced-out", o.reduced_out);
    auto* mutate = app.add_subcommand("mutate", "Kauer move");
    input(mutate);
    mutate->add_option("--orbit", o.orbit, "an edge id; its ν-orbit moves");
    mutate->add_option("--halves", o.halves, "comma-separated ι- and ν-closed half-edges");
    mutate->add_option("--dir", o.dir)->check(CLI::IsMember({"left", "right"}));
    mutate->add_option("-o,--out", o.out, "write the new graph here");
    auto* walks = app.add_subcommand("walks", "signed walks and admissible/complete sets");
    input(walks);
    walks->add_option("--max-len", o.max_len, "default 2 * #edges")->check(CLI::Range(1, 64));
    walks->add_option("--max-count", o.max_count, "enumeration cap (default FBGA_MAX_COUNT or 2000000)")
        ->check(CLI::PositiveNumber);
    walks->add_flag("--nu-stable", o.nu_stable);
    walks->add_flag("--complete", o.complete, "list the complete sets");
    walks->add_flag("--via-reduced", o.via_reduced, "compare with the reduced form through psi");
    walks->add_flag("--strict", o.strict, "fan certificate k <= o - 1");
    auto* tilt = app.add_subcommand("tilt-discrete", "tilting-discreteness decision");
    input(tilt);
    auto* dot = app.add_subcommand("dot", "Graphviz export");
    input(dot);
    dot->add_flag("--quiver", o.as_quiver, "export the quiver instead of the graph");
    auto* fixtures = app.add_subcommand("fixtures", "list the built-in graphs");
    auto* srv = app.add_subcommand("serve", "HTTP API");
    srv->add_option("--port", o.port)->check(CLI::Range(1, 65535));
    srv->add_option("--host", o.host);
    srv->add_flag("--cors", o.cors);
    srv->add_option("--sessions", o.sessions, "LRU capacity")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*inv) return cmd_invariants(o);
        if (*quiver) return cmd_quiver(o);
        if (*reduce) return cmd_reduce(o);
        if (*mutate) return cmd_mutate(o);
        if (*walks) return cmd_walks(o);
        if (*tilt) return cmd_tilt(o);
        if (*dot) return cmd_dot(o);
        if (*fixtures) return cmd_fixtures(o);
        if (*srv) {
            std::cerr << "listening on " << o.host << ":" << o.port << "\n";
            if (!serve(o.host, o.port, o.cors, o.sessions)) {
                std::cerr << "cannot bind " << o.host << ":" << o.port << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << error_json(e).dump(2) << "\n";
        return 1;
    }
    return 2;
}
