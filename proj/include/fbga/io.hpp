#pragma once

#include "fbga/error.hpp"
#include "fbga/fbg.hpp"
#include "fbga/mutation.hpp"
#include "fbga/quiver.hpp"
#include "fbga/reduction.hpp"
#include "fbga/walks.hpp"

#include <json.hpp>

#include <string>

namespace fbga {

using Json = nlohmann::ordered_json;

// Graph file format. Unknown keys, wrong types and bad JSON are MalformedInput.
RawGraph parse_graph(const Json& j);
RawGraph parse_graph_text(const std::string& text);
// "fixtures:<name>" or a path to a graph file.
RawGraph load_input(const std::string& where);

Json graph_json(const RibbonGraph& g, const std::vector<int>* degrees = nullptr);
Json graph_json(const BiserialFBG& f);
Json graph_json(const DegGraph& dg);

Json error_json(const Error& e);
Json invariants_json(const BiserialFBG& f);
Json orbits_json(const BiserialFBG& f);  // ν edge-orbits with their case
Json quiver_json(const Quiver& q, const DimReport* dims = nullptr, const RibbonGraph* g = nullptr);
Json reduced_json(const ReducedForm& r);  // summary + both graphs
Json walk_json(const WalkSpace& s, const SignedWalk& w);
Json census_json(const CycleCensus& c);
Json set_counts_json(const SetCounts& c);
Json mutation_json(const MutationResult& m);

}  // namespace fbga
