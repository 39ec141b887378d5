#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ccg/dynamics.hpp"
#include "ccg/extensions.hpp"
#include "ccg/game.hpp"

namespace ccg {

using Json = nlohmann::ordered_json;

// Every document carries "v": 1. Readers accept a missing "v" and throw
// InputError naming the offending field on anything malformed.

Json weight_to_json(const Weight& w);
Weight weight_from_json(const Json& j, const std::string& field);
Json ext_to_json(const ExtInt& x);
Json rational_to_json(const ExtRational& x);

// {"v":1, "n":..., ["directed":true,] "weight_set":[...], "weights":[[u,v,w],...]}
// Zero pairs are omitted; symmetric games list each pair once with u < v.
Json game_to_json(const Game& g);
Game game_from_json(const Json& j);

// {"v":1, "n":..., "groups":[[...], ...]}
Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j);

// {"v":1, "n":..., "q":..., "memberships":[[group ids of node 0], ...]}
// Group ids index the canonical group list, which is written as "groups".
Json configuration_to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);

// {"v":1, "n":..., "t":..., "hyperedges":[[[nodes...], w], ...]}
Json hypergame_to_json(const HyperGame& h);
HyperGame hypergame_from_json(const Json& j);

// One object per step, then {"status":..., "steps":...}.
Json step_to_json(const Step& s);
Json trace_summary_json(const Trace& t);
void write_trace_jsonl(std::ostream& os, const Trace& t);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace ccg
