#include "fbga/service.hpp"

#include "fbga/fixtures.hpp"

#include <httplib.h>

#include <iomanip>
#include <sstream>

namespace fbga {

namespace {

Reply fail(int status, const std::string& kind, const std::string& msg, std::vector<std::string> v = {}) {
    return {status, {{"error", kind}, {"message", msg}, {"violations", v}}};
}
Reply no_session(const std::string& id) { return fail(404, "UnknownSession", "no session '" + id + "'"); }
Reply from_error(const Error& e) { return {e.kind() == ErrorKind::MalformedInput ? 400 : 422, error_json(e)}; }

Json parse_body(const std::string& body) {
    try {
        Json j = Json::parse(body.empty() ? "{}" : body);
        if (!j.is_object()) throw Error(ErrorKind::MalformedInput, "request body must be a JSON object");
        return j;
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
    }
}

void only_keys(const Json& j, std::initializer_list<const char*> keys) {
    std::vector<std::string> bad;
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        if (!ok) bad.push_back("unknown key '" + it.key() + "'");
    }
    if (!bad.empty()) throw Error(ErrorKind::MalformedInput, "unknown keys", bad);
}

Json summary(const BiserialFBG& f) {
    const RibbonGraph& g = f.graph();
    Json m = Json::object();
    for (int v = 0; v < g.num_vertices(); ++v) m[g.vertex_name(v)] = to_string(f.m(v));
    return {{"vertices", g.num_vertices()},
            {"edges", g.num_edges()},
            {"nu_order", f.nu_order()},
            {"admissible", is_admissible(f).admissible},
            {"multiplicities", m}};
}

// Names of catalog fixtures isomorphic to f, degrees included.
Json isomorphic_fixtures(const BiserialFBG& f) {
    Json out = Json::array();
    for (const auto& fi : fixture_catalog()) {
        DegGraph dg = fixture(fi.name);
        if (dg.g.num_half_edges() != f.graph().num_half_edges()) continue;
        if (graph_isomorphic(f.graph(), dg.g, &f.degrees(), &dg.d)) out.push_back(fi.name);
    }
    return out;
}

Json render(const BiserialFBG& f) {
    // render-ready: adjacency plus rotation, so the UI needs no combinatorics
    const RibbonGraph& g = f.graph();
    Json adj = Json::array();
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& E = g.edges()[e];
        Json a{{"edge", g.edge_name(e)}, {"from", g.vertex_name(g.source(E.a))}, {"from_position", g.position(E.a)}};
        if (!E.orbifold()) {
            a["to"] = g.vertex_name(g.source(E.b));
            a["to_position"] = g.position(E.b);
        }
        adj.push_back(a);
    }
    return adj;
}

int int_param(const std::map<std::string, std::string>& q, const std::string& k, int dflt, int lo, int hi) {
    auto it = q.find(k);
    if (it == q.end() || it->second.empty()) return dflt;
    try {
        size_t used = 0;
        long long v = std::stoll(it->second, &used);
        if (used != it->second.size() || v < lo || v > hi) throw std::out_of_range(k);
        return static_cast<int>(v);
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::MalformedInput,
                    "query parameter '" + k + "' must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

bool flag_param(const std::map<std::string, std::string>& q, const std::string& k) {
    auto it = q.find(k);
    if (it == q.end()) return false;
    if (it->second == "" || it->second == "1" || it->second == "true") return true;
    if (it->second == "0" || it->second == "false") return false;
    throw Error(ErrorKind::MalformedInput, "query parameter '" + k + "' must be true or false");
}

}  // namespace

size_t SessionStore::size() const {
    std::lock_guard lk(mu_);
    return lru_.size();
}

std::string SessionStore::fresh_id() {
    for (;;) {
        std::ostringstream os;
        os << std::hex << std::setw(16) << std::setfill('0') << rng_();
        if (!index_.count(os.str())) return os.str();
    }
}

std::optional<Session> SessionStore::snapshot(const std::string& id) {
    std::lock_guard lk(mu_);
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    lru_.splice(lru_.begin(), lru_, it->second);
    return *it->second;
}

Reply SessionStore::create(const std::string& body) {
    try {
        Json j = parse_body(body);
        only_keys(j, {"graph", "fixture"});
        if (j.contains("graph") == j.contains("fixture"))
            throw Error(ErrorKind::MalformedInput, "give exactly one of 'graph' and 'fixture'");
        RawGraph raw;
        if (j.contains("fixture")) {
            if (!j["fixture"].is_string()) throw Error(ErrorKind::MalformedInput, "'fixture' must be a string");
            raw = fixture_raw(j["fixture"].get<std::string>());
        } else {
            raw = parse_graph(j["graph"]);
        }
        BiserialFBG f = check_si(load_deg(raw));

        std::lock_guard lk(mu_);
        Session s{fresh_id(), f, f, {}, 0, std::chrono::system_clock::now()};
        lru_.push_front(s);
        index_[s.id] = lru_.begin();
        while (lru_.size() > cap_) {
            index_.erase(lru_.back().id);
            lru_.pop_back();
        }
        return {201, {{"session_id", s.id}, {"version", s.version}, {"summary", summary(f)}}};
    } catch (const Error& e) {
        return from_error(e);
    }
}

Reply SessionStore::graph(const std::string& id) {
    auto s = snapshot(id);
    if (!s) return no_session(id);
    const BiserialFBG& f = s->current;
    auto adm = is_admissible(f);
    return {200,
            {{"session_id", s->id},
             {"version", s->version},
             {"graph", graph_json(f)},
             {"invariants", invariants_json(f)},
             {"nu_orbits", orbits_json(f)},
             {"admissible", adm.admissible},
             {"isomorphic_to", isomorphic_fixtures(f)},
             {"render", render(f)},
             {"history", s->history.size()}}};
}

Reply SessionStore::orbits(const std::string& id) {
    auto s = snapshot(id);
    if (!s) return no_session(id);
    return {200, {{"version", s->version}, {"orbits", orbits_json(s->current)}}};
}

Reply SessionStore::reduced(const std::string& id) {
    auto s = snapshot(id);
    if (!s) return no_session(id);
    try {
        return {200, reduced_json(reduced_form(s->current))};
    } catch (const Error& e) {
        return from_error(e);
    }
}

Reply SessionStore::walks(const std::string& id, const std::map<std::string, std::string>& query) {
    auto s = snapshot(id);
    if (!s) return no_session(id);
    try {
        const BiserialFBG& f = s->current;
        int max_len = int_param(query, "max_len", 2 * f.graph().num_edges(), 1, 16);
        long long cap = int_param(query, "max_count", static_cast<int>(std::min<long long>(max_count_default(), 1 << 30)), 1,
                                  1 << 30);
        bool complete = flag_param(query, "complete");
        WalkUniverse u = build_universe(walk_space(f), max_len);
        Json ws = Json::array();
        for (const auto& w : u.walks) ws.push_back(walk_json(u.space, w));
        auto nu = walk_action(u, f.nu_perm());
        Json out{{"max_len", max_len},
                 {"walks", ws},
                 {"counts", set_counts_json(count_sets(u, {}, cap))},
                 {"nu_stable", set_counts_json(count_sets(u, nu, cap))}};
        if (complete) {
            CliqueList cl = complete_sets(u, cap);
            out["complete_sets"] = cl.cliques;
            out["truncated"] = cl.truncated;
        }
        return {200, out};
    } catch (const Error& e) {
        return from_error(e);
    }
}

Reply SessionStore::tilt_discrete(const std::string& id) {
    auto s = snapshot(id);
    if (!s) return no_session(id);
    try {
        TiltDiscrete t = tilting_discrete(s->current);
        return {200, {{"discrete", t.discrete}, {"reason", t.reason}, {"admissible", t.admissible}, {"census", census_json(t.census)}}};
    } catch (const Error& e) {
        return from_error(e);
    }
}

Reply SessionStore::mutate(const std::string& id, const std::string& body) {
    auto s = snapshot(id);
    if (!s) return no_session(id);
    std::optional<MutationResult> res;
    Json move;
    try {
        Json j = parse_body(body);
        only_keys(j, {"orbit", "direction", "version"});
        if (!j.contains("orbit") || !j.contains("direction"))
            throw Error(ErrorKind::MalformedInput, "mutate needs 'orbit' and 'direction'");
        if (j.contains("version")) {
            if (!j["version"].is_number_integer()) throw Error(ErrorKind::MalformedInput, "'version' must be an integer");
            if (j["version"].get<long long>() != s->version)
                return fail(409, "VersionConflict", "session is at version " + std::to_string(s->version));
        }
        if (!j["direction"].is_string() || (j["direction"] != "left" && j["direction"] != "right"))
            throw Error(ErrorKind::MalformedInput, "'direction' must be \"left\" or \"right\"");
        Direction dir = j["direction"] == "left" ? Direction::Left : Direction::Right;

        const RibbonGraph& g = s->current.graph();
        auto edge = [&](const Json& x) {
            if (!x.is_string()) throw Error(ErrorKind::MalformedInput, "edge ids must be strings");
            int e = g.find_edge(x.get<std::string>());
            if (e < 0) throw Error(ErrorKind::UnknownEdge, "unknown edge '" + x.get<std::string>() + "'");
            return e;
        };
        std::vector<int> orbit;
        if (j["orbit"].is_string()) {
            orbit = edge_orbit_of(s->current, edge(j["orbit"]));
        } else if (j["orbit"].is_array()) {
            for (const Json& x : j["orbit"]) orbit.push_back(edge(x));
        } else {
            throw Error(ErrorKind::MalformedInput, "'orbit' must be an edge id or a list of edge ids");
        }
        res = kauer_move(s->current, orbit, dir);
        move = {{"orbit", j["orbit"]}, {"direction", j["direction"]}};
    } catch (const Error& e) {
        return from_error(e);
    }

    std::lock_guard lk(mu_);
    auto it = index_.find(id);
    if (it == index_.end()) return no_session(id);
    Session& live = *it->second;
    if (live.version != s->version)
        return fail(409, "VersionConflict", "session changed during the move; now at version " + std::to_string(live.version));
    live.history.emplace_back(live.current, move);
    live.current = res->fbg;
    ++live.version;
    Json out = mutation_json(*res);
    out["version"] = live.version;
    out["summary"] = summary(res->fbg);
    out["render"] = render(res->fbg);
    return {200, out};
}

Reply SessionStore::undo(const std::string& id) {
    std::lock_guard lk(mu_);
    auto it = index_.find(id);
    if (it == index_.end()) return no_session(id);
    Session& s = *it->second;
    lru_.splice(lru_.begin(), lru_, it->second);
    if (s.history.empty()) return fail(422, "NothingToUndo", "no move to undo");
    s.current = s.history.back().first;
    s.history.pop_back();
    ++s.version;
    return {200, {{"version", s.version}, {"summary", summary(s.current)}, {"graph", graph_json(s.current)}}};
}

void mount_routes(httplib::Server& srv, SessionStore& store, bool cors) {
    auto send = [](httplib::Response& res, const Reply& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    if (cors) {
        srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                 {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                 {"Access-Control-Allow-Headers", "Content-Type"}});
        srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    }
    srv.Post("/sessions", [&store, send](const httplib::Request& req, httplib::Response& res) { send(res, store.create(req.body)); });
    auto get = [&](const char* tail, auto fn) {
        srv.Get(std::string(R"(/sessions/([^/]+)/)") + tail,
                [&store, send, fn](const httplib::Request& req, httplib::Response& res) { send(res, fn(store, req)); });
    };
    get("graph", [](SessionStore& s, const httplib::Request& r) { return s.graph(r.matches[1]); });
    get("orbits", [](SessionStore& s, const httplib::Request& r) { return s.orbits(r.matches[1]); });
    get("reduced", [](SessionStore& s, const httplib::Request& r) { return s.reduced(r.matches[1]); });
    get("tilt-discrete", [](SessionStore& s, const httplib::Request& r) { return s.tilt_discrete(r.matches[1]); });
    get("walks", [](SessionStore& s, const httplib::Request& r) {
        std::map<std::string, std::string> q;
        for (const auto& [k, v] : r.params) q[k] = v;
        return s.walks(r.matches[1], q);
    });
    srv.Post(R"(/sessions/([^/]+)/mutate)", [&store, send](const httplib::Request& req, httplib::Response& res) {
        send(res, store.mutate(req.matches[1], req.body));
    });
    srv.Post(R"(/sessions/([^/]+)/undo)", [&store, send](const httplib::Request& req, httplib::Response& res) {
        send(res, store.undo(req.matches[1]));
    });
    srv.set_error_handler([send](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) send(res, fail(res.status, "NotFound", "no such route"));
    });
}

bool serve(const std::string& host, int port, bool cors, size_t capacity) {
    httplib::Server srv;
    SessionStore store(capacity);
    mount_routes(srv, store, cors);
    return srv.listen(host, port);
}

}  // namespace fbga
