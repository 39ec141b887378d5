#include "ccg/io.hpp"

#include <fstream>
#include <map>
#include <set>

namespace ccg {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw InputError("field '" + field + "': " + what);
}

void check_version(const Json& j) {
  if (!j.is_object()) bad("<root>", "expected an object");
  if (j.contains("v") && !(j["v"].is_number_integer() && j["v"].get<long long>() == 1))
    bad("v", "unsupported version");
}

const Json& member(const Json& j, const std::string& key) {
  if (!j.contains(key)) bad(key, "missing");
  return j[key];
}

long long as_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) bad(field, "expected an integer");
  return j.get<long long>();
}

int as_count(const Json& j, const std::string& field, long long lo, long long hi) {
  long long v = as_int(j, field);
  if (v < lo || v > hi) bad(field, "out of range");
  return static_cast<int>(v);
}

std::vector<Node> node_list(const Json& j, const std::string& field, int n) {
  if (!j.is_array()) bad(field, "expected an array of nodes");
  std::vector<Node> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_count(j[i], field + "[" + std::to_string(i) + "]", 0, n - 1));
  return out;
}

}  // namespace

Json weight_to_json(const Weight& w) {
  if (w.is_neg_inf()) return "-inf";
  if (w.is_best_friend()) return "N";
  return w.value;
}

Weight weight_from_json(const Json& j, const std::string& field) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "-inf") return Weight::neg_inf();
    if (s == "N") return Weight::best_friend();
    bad(field, "expected an integer, \"-inf\" or \"N\"");
  }
  return Weight::finite(as_int(j, field));
}

Json ext_to_json(const ExtInt& x) {
  if (x.is_neg_inf()) return "-inf";
  return x.value();
}

Json rational_to_json(const ExtRational& x) {
  if (x.is_neg_inf()) return "-inf";
  const Rational& r = x.value();
  if (denominator(r) == 1) return static_cast<long long>(numerator(r));
  return rational_str(r);
}

Json game_to_json(const Game& g) {
  Json j;
  j["v"] = 1;
  j["n"] = g.n();
  if (g.directed()) j["directed"] = true;
  Json ws = Json::array();
  for (const auto& w : g.weight_set()) ws.push_back(weight_to_json(w));
  j["weight_set"] = ws;
  Json edges = Json::array();
  for (Node u = 0; u < g.n(); ++u)
    for (Node v = 0; v < g.n(); ++v) {
      if (u == v || (!g.directed() && v < u)) continue;
      Weight w = g.weight(u, v);
      if (w == Weight::finite(0)) continue;
      edges.push_back(Json::array({u, v, weight_to_json(w)}));
    }
  j["weights"] = edges;
  return j;
}

Game game_from_json(const Json& j) {
  check_version(j);
  int n = as_count(member(j, "n"), "n", 1, 1 << 20);
  bool directed = false;
  if (j.contains("directed")) {
    if (!j["directed"].is_boolean()) bad("directed", "expected a boolean");
    directed = j["directed"].get<bool>();
  }
  Game g(n, directed);
  if (j.contains("weight_set")) {
    const Json& ws = j["weight_set"];
    if (!ws.is_array()) bad("weight_set", "expected an array");
    std::vector<Weight> set;
    for (std::size_t i = 0; i < ws.size(); ++i) set.push_back(weight_from_json(ws[i], "weight_set[" + std::to_string(i) + "]"));
    g.declare_weight_set(set);
  }
  const Json& edges = member(j, "weights");
  if (!edges.is_array()) bad("weights", "expected an array");
  std::map<std::pair<Node, Node>, Weight> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string field = "weights[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    if (!e.is_array() || e.size() != 3) bad(field, "expected [u, v, w]");
    Node u = as_count(e[0], field, 0, n - 1), v = as_count(e[1], field, 0, n - 1);
    if (u == v) bad(field, "self-loop");
    Weight w = weight_from_json(e[2], field);
    auto key = directed ? std::pair{u, v} : std::pair{std::min(u, v), std::max(u, v)};
    auto [it, fresh] = seen.emplace(key, w);
    if (!fresh && !(it->second == w)) bad(field, "conflicts with an earlier entry for the same pair");
    g.set(u, v, w);
  }
  if (!g.weight_set().empty()) {
    try {
      g.validate();
    } catch (const InputError& e) {
      bad("weights", e.what());
    }
  }
  return g;
}

Json partition_to_json(const Partition& p) {
  Json j;
  j["v"] = 1;
  j["n"] = p.n();
  j["groups"] = p.groups();
  return j;
}

Partition partition_from_json(const Json& j) {
  check_version(j);
  int n = as_count(member(j, "n"), "n", 1, 1 << 20);
  const Json& gs = member(j, "groups");
  if (!gs.is_array()) bad("groups", "expected an array");
  std::vector<std::vector<Node>> groups;
  std::vector<int> hits(n, 0);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    auto nodes = node_list(gs[i], "groups[" + std::to_string(i) + "]", n);
    for (Node u : nodes)
      if (++hits[u] > 1) bad("groups", "node " + std::to_string(u) + " appears twice");
    if (!nodes.empty()) groups.push_back(std::move(nodes));
  }
  for (Node u = 0; u < n; ++u)
    if (!hits[u]) bad("groups", "node " + std::to_string(u) + " is missing");
  return Partition(n, std::move(groups));
}

Json configuration_to_json(const Configuration& c) {
  Json j;
  j["v"] = 1;
  j["n"] = c.n();
  j["q"] = c.q();
  Json mem = Json::array();
  for (Node u = 0; u < c.n(); ++u) mem.push_back(c.memberships(u));
  j["memberships"] = mem;
  j["groups"] = c.groups();
  return j;
}

Configuration configuration_from_json(const Json& j) {
  check_version(j);
  int n = as_count(member(j, "n"), "n", 1, 1 << 20);
  int q = as_count(member(j, "q"), "q", 1, 1 << 10);
  const Json& mem = member(j, "memberships");
  if (!mem.is_array() || static_cast<int>(mem.size()) != n) bad("memberships", "expected one list per node");
  std::map<long long, std::vector<Node>> by_id;
  for (Node u = 0; u < n; ++u) {
    std::string field = "memberships[" + std::to_string(u) + "]";
    const Json& ids = mem[u];
    if (!ids.is_array() || static_cast<int>(ids.size()) != q) bad(field, "expected q group ids");
    std::set<long long> distinct;
    for (const auto& x : ids) {
      long long id = as_int(x, field);
      if (!distinct.insert(id).second) bad(field, "repeated group id");
      by_id[id].push_back(u);
    }
  }
  std::vector<std::vector<Node>> groups;
  for (auto& [id, nodes] : by_id) groups.push_back(std::move(nodes));
  return Configuration(n, q, std::move(groups));
}

Json hypergame_to_json(const HyperGame& h) {
  Json j;
  j["v"] = 1;
  j["n"] = h.n();
  j["t"] = h.t();
  Json es = Json::array();
  for (const auto& [nodes, w] : h.edges()) es.push_back(Json::array({nodes, weight_to_json(w)}));
  j["hyperedges"] = es;
  return j;
}

HyperGame hypergame_from_json(const Json& j) {
  check_version(j);
  int n = as_count(member(j, "n"), "n", 1, 1 << 20);
  int t = j.contains("t") ? as_count(j["t"], "t", 0, 1 << 20) : 0;
  HyperGame h(n, t);
  const Json& es = member(j, "hyperedges");
  if (!es.is_array()) bad("hyperedges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string field = "hyperedges[" + std::to_string(i) + "]";
    if (!es[i].is_array() || es[i].size() != 2) bad(field, "expected [[nodes...], w]");
    auto nodes = node_list(es[i][0], field, n);
    Weight w = weight_from_json(es[i][1], field);
    if (w.is_best_friend()) bad(field, "\"N\" is not allowed on hyperedges");
    try {
      h.add(nodes, w);
    } catch (const PreconditionError& e) {
      bad(field, e.what());
    }
  }
  return h;
}

Json step_to_json(const Step& s) {
  Json j;
  j["step"] = s.index;
  j["coalition"] = s.deviation.coalition;
  if (s.deviation.target == kNewGroup)
    j["target"] = "new";
  else
    j["target"] = s.deviation.target;
  if (s.gossip) j["gossip"] = true;
  j["f_before"] = ext_to_json(s.f_before);
  j["f_after"] = ext_to_json(s.f_after);
  Json lam = Json::array();
  for (int i = s.lambda_after.n(); i >= 1; --i) lam.push_back(s.lambda_after[i]);
  j["lambda_after"] = lam;
  return j;
}

Json trace_summary_json(const Trace& t) {
  Json j;
  j["status"] = status_name(t.status);
  j["steps"] = t.num_steps;
  return j;
}

void write_trace_jsonl(std::ostream& os, const Trace& t) {
  for (const auto& s : t.steps) os << step_to_json(s).dump() << '\n';
  os << trace_summary_json(t).dump() << '\n';
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(1) << '\n';
}

}  // namespace ccg
