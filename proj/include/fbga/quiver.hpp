#pragma once

#include "fbga/fbg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fbga {

struct Arrow {
    std::string id;
    int from = -1;
    int to = -1;
    std::string half;     // provenance half-edge id
    std::string sign_in;  // i in ^iα_h^j ("", "+", "-")
    std::string sign_out; // j
};

// A relation generator. One term: the word is zero. Two or more: the words are equal.
struct Relation {
    std::string family;
    std::vector<std::vector<int>> terms;  // arrow indices, composed left to right
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;

    int find_vertex(const std::string& id) const;
    std::map<std::string, int> family_counts() const;
    int count(const std::string& family) const;
};

enum class Presentation { TwoRegular, Admissible };

Quiver build_quiver(const BiserialFBG& f, Presentation p);

struct BasisPath {
    enum Kind { Trivial, Path, Socle };
    Kind kind = Trivial;
    int from = -1;   // edge
    int to = -1;     // edge
    int half = -1;   // starting half-edge for Path
    int length = 0;  // Loewy layer
};
std::vector<BasisPath> rho_path_basis(const BiserialFBG& f);

enum class HomCase { BothShared, BothSharedCrossed, OneShared, OneSharedCrossed, Disjoint };
const char* hom_case_name(HomCase c);

struct HomDim {
    int dim = 0;
    HomCase which = HomCase::Disjoint;
};
// dim e_P A e_P' : basis paths from edge P to edge P', in closed form.
HomDim hom_dim_formula(const BiserialFBG& f, int P, int Pp);

struct DimReport {
    std::vector<std::vector<int>> hom;  // hom[P][P']
    long long total = 0;
    std::vector<int> projective;                             // dim of each projective
    std::vector<std::vector<std::vector<int>>> loewy;        // per projective: layers of edge indices
};
DimReport dim_report(const BiserialFBG& f);          // closed form, parallel over pairs
DimReport dim_report_serial(const BiserialFBG& f);   // closed form, one thread
DimReport dim_report_basis(const BiserialFBG& f);    // counted off the basis

// Skew-BG: orbifold ribbon graph whose valencies divide the degrees.
Quiver build_skew_quiver(const DegGraph& og);

struct QuiverIso {
    std::vector<int> vmap;
    std::vector<int> amap;
};
// Relation families are compared by cardinality only, and only when asked to.
std::optional<QuiverIso> quiver_isomorphic(const Quiver& a, const Quiver& b, bool compare_relations = true,
                                           long long budget = 5'000'000);

std::string to_dot(const Quiver& q);

}  // namespace fbga
