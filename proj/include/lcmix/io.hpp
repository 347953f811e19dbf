#pragma once

#include <string>

#include <json.hpp>

#include "lcmix/aperiodicity.hpp"
#include "lcmix/consistency.hpp"
#include "lcmix/generator.hpp"
#include "lcmix/hypergraph.hpp"
#include "lcmix/pipeline.hpp"
#include "lcmix/structures.hpp"

namespace lcmix::io {

using nlohmann::json;

// {"domain_size": n, "relations": [{"name": "R", "arity": k, "tuples": [[..],..]}]}
RelationalStructure parse_structure(const json& j);
RelationalStructure parse_structure_text(const std::string& text);
json structure_to_json(const RelationalStructure& s);

// {"n": n, "r": r, "edges": [[..],..]} with edges emitted sorted ascending
Hypergraph parse_hypergraph(const json& j);
Hypergraph parse_hypergraph_text(const std::string& text);
json hypergraph_to_json(const Hypergraph& h);

json rat_to_json(const Rat& r);          // "p/q" string
Rat rat_from_json(const json& j);        // accepts "p/q", "p", or an integer

json report_to_json(const AperiodicityReport& rep);
json report_to_json(const FibrosityReport& rep);
json report_to_json(const SparsityVerdict& v);
json report_to_json(const GeneratorParams& p);
json report_to_json(const GenerationReport& rep);
json report_to_json(const LcResult& res);
json report_to_json(const GapVerdict& v);
json report_to_json(const FoolingReport& rep);

} // namespace lcmix::io
