#pragma once

#include "fbga/io.hpp"

#include <chrono>
#include <list>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>

namespace httplib {
class Server;
}

namespace fbga {

struct Reply {
    int status = 200;
    Json body;
};

struct Session {
    std::string id;
    BiserialFBG initial;
    BiserialFBG current;
    std::vector<std::pair<BiserialFBG, Json>> history;  // state before each move, and the move
    long long version = 0;
    std::chrono::system_clock::time_point created;
};

// In-memory sessions, LRU-evicted. Every method is safe to call concurrently; the slow work
// runs on a snapshot outside the lock and a mutate only lands if the version is unchanged.
class SessionStore {
public:
    explicit SessionStore(size_t capacity = 64) : cap_(capacity) {}

    Reply create(const std::string& body);
    Reply graph(const std::string& id);
    Reply orbits(const std::string& id);
    Reply reduced(const std::string& id);
    Reply walks(const std::string& id, const std::map<std::string, std::string>& query);
    Reply tilt_discrete(const std::string& id);
    Reply mutate(const std::string& id, const std::string& body);
    Reply undo(const std::string& id);

    size_t size() const;

private:
    std::optional<Session> snapshot(const std::string& id);
    std::string fresh_id();

    size_t cap_;
    mutable std::mutex mu_;
    std::list<Session> lru_;  // front = most recent
    std::unordered_map<std::string, std::list<Session>::iterator> index_;
    std::mt19937_64 rng_{std::random_device{}()};
};

// Registers the routes on `srv`. With cors, answers preflight requests and allows any origin.
void mount_routes(httplib::Server& srv, SessionStore& store, bool cors);

// Blocking. Returns false if the port could not be bound.
bool serve(const std::string& host, int port, bool cors, size_t capacity = 64);

}  // namespace fbga
