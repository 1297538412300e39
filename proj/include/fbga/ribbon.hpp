#pragma once

#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fbga {

using Rational = boost::rational<long long>;

// Always "p/q", also for integers, so goldens never change shape.
std::string to_string(const Rational& r);

// An ι-orbit. b == -1 for an orbifold edge (ι-fixed half-edge a).
struct Edge {
    int a = -1;
    int b = -1;
    bool orbifold() const { return b < 0; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

// Graph as it comes off the wire, before any checking.
struct RawGraph {
    struct Vertex {
        std::string id;
        std::optional<int> degree;
    };
    std::vector<Vertex> vertices;
    std::vector<std::pair<std::string, std::vector<std::string>>> rotation;
    std::vector<std::vector<std::string>> pairing;
    bool orbifold = false;
};

// Half-edge combinatorial map (V, H, s, ι, ρ). Rotations are the single source of
// truth; s and positions are derived. Vertices and half-edges are indexed in
// lexicographic order of their ids, so index comparisons are id comparisons.
class RibbonGraph {
public:
    RibbonGraph() = default;

    // Validates and renumbers. Throws Error(StructureViolation) listing every problem.
    static RibbonGraph make(std::vector<std::string> vertex_names,
                            std::vector<std::string> half_names,
                            const std::vector<std::vector<int>>& rotation,
                            const std::vector<int>& iota,
                            bool orbifold);

    int num_vertices() const { return static_cast<int>(vname_.size()); }
    int num_half_edges() const { return static_cast<int>(hname_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::string& vertex_name(int v) const { return vname_[v]; }
    const std::string& half_name(int h) const { return hname_[h]; }
    const std::vector<std::string>& vertex_names() const { return vname_; }
    const std::vector<std::string>& half_names() const { return hname_; }

    int source(int h) const { return src_[h]; }
    int iota(int h) const { return iota_[h]; }
    int position(int h) const { return pos_[h]; }
    const std::vector<int>& rotation(int v) const { return rot_[v]; }
    const std::vector<std::vector<int>>& rotations() const { return rot_; }
    const std::vector<int>& iotas() const { return iota_; }
    int val(int v) const { return static_cast<int>(rot_[v].size()); }
    bool orbifold() const { return orbifold_; }
    bool fixed(int h) const { return iota_[h] == h; }

    // k-fold rotation inside the cycle at s(h); k may be negative.
    int rho(int h, long long k = 1) const {
        const auto& r = rot_[src_[h]];
        long long n = static_cast<long long>(r.size());
        long long p = ((pos_[h] + k) % n + n) % n;
        return r[static_cast<size_t>(p)];
    }
    // Clockwise offset from h to g at a common vertex, in [0, val).
    int offset(int h, int g) const {
        int n = val(src_[h]);
        return ((pos_[g] - pos_[h]) % n + n) % n;
    }

    int find_vertex(std::string_view id) const;  // -1 if absent
    int find_half(std::string_view id) const;    // -1 if absent
    int half(std::string_view id) const;         // throws UnknownHalfEdge

    const std::vector<Edge>& edges() const { return edges_; }
    int edge_of(int h) const { return edge_of_[h]; }
    std::string edge_name(int e) const;
    int find_edge(std::string_view id) const;  // accepts an edge id or a member half-edge id

    bool is_loop(int e) const {
        const Edge& E = edges_[e];
        return !E.orbifold() && src_[E.a] == src_[E.b];
    }

    std::vector<int> components() const;  // component index per vertex
    bool connected() const;

    // Rebuild from name-level lists (rotations keyed by vertex index).
    RawGraph to_raw(const std::vector<int>* degrees = nullptr) const;

private:
    std::vector<std::string> vname_, hname_;
    std::vector<std::vector<int>> rot_;
    std::vector<int> src_, pos_, iota_;
    std::vector<Edge> edges_;
    std::vector<int> edge_of_;
    bool orbifold_ = false;
};

// Name-level validation; also reports duplicate ids and dangling references.
RibbonGraph validate_ribbon(const RawGraph& raw);
std::vector<int> raw_degrees(const RawGraph& raw, const RibbonGraph& g);  // 0 where absent

std::vector<int> valency(const RibbonGraph& g);

struct Isomorphism {
    std::vector<int> vmap;  // g1 vertex -> g2 vertex
    std::vector<int> hmap;  // g1 half-edge -> g2 half-edge
};

inline constexpr int kDefaultIsoLimit = 4096;

// Bijection commuting with s, ι, ρ (and degrees when both are supplied).
std::optional<Isomorphism> graph_isomorphic(const RibbonGraph& g1, const RibbonGraph& g2,
                                            const std::vector<int>* d1 = nullptr,
                                            const std::vector<int>* d2 = nullptr,
                                            int half_edge_limit = kDefaultIsoLimit);

std::string to_dot(const RibbonGraph& g, const std::vector<int>* degrees = nullptr);

}  // namespace fbga
