// Command-line front end. Exit codes: 0 ok, 1 malformed input or bad
// arguments, 2 a verification failed, 3 a search ran out of budget.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ccg/cascades.hpp"
#include "ccg/efficiency.hpp"
#include "ccg/extensions.hpp"
#include "ccg/gallery.hpp"
#include "ccg/io.hpp"
#include "ccg/lattice.hpp"
#include "ccg/stability.hpp"

using namespace ccg;

namespace {

constexpr int kOk = 0, kBadInput = 1, kFail = 2, kInfeasible = 3;

struct Global {
  std::uint64_t seed = 0;
  std::uint64_t budget = 50'000'000;
  bool json = false;
  int threads = 1;
  SearchOptions search() const {
    SearchOptions o;
    o.budget = budget;
    return o;
  }
};

void emit(const Global& gl, const Json& j, const std::string& text) {
  if (gl.json)
    std::cout << j.dump(1) << '\n';
  else
    std::cout << text;
}

Game load_game(const std::string& path) { return game_from_json(read_json_file(path)); }

Scheduler make_scheduler(const std::string& name, std::uint64_t seed) {
  auto p = parse_policy(name);
  if (!p) throw PreconditionError("unknown policy '" + name + "' (firstlex, random, mincoalition, maxgain)");
  return {*p, seed};
}

// indicator | eps | eps=<rational>
HFunction make_h(const std::string& name, const Game& g) {
  if (name == "indicator") return HFunction::indicator();
  if (name == "eps") return HFunction::linear_eps(default_eps(g));
  if (name.rfind("eps=", 0) == 0) {
    try {
      Rational e(name.substr(4));
      if (e <= 0) throw PreconditionError("eps must be positive");
      return HFunction::linear_eps(e);
    } catch (const std::runtime_error&) {
      throw PreconditionError("bad eps value '" + name.substr(4) + "'");
    }
  }
  throw PreconditionError("unknown sharing function '" + name + "' (indicator, eps, eps=1/100)");
}

Params parse_params(const std::vector<std::string>& kv) {
  Params ps;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw PreconditionError("parameter '" + s + "' must look like key=value");
    ps[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return ps;
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

// ---------------------------------------------------------------- dynamics

struct DynamicsArgs {
  std::string game, policy = "firstlex", initial, trace, out;
  int k = 1;
  std::size_t max_steps = 1'000'000;
  bool gossip = false, check_potential = false;
};

int run_dynamics_cmd(const Global& gl, const DynamicsArgs& a) {
  Game g = load_game(a.game);
  RunOptions ro;
  ro.max_steps = a.max_steps;
  ro.gossip = a.gossip;
  ro.assert_potential = a.check_potential;
  ro.record_steps = !a.trace.empty();
  if (!a.initial.empty()) ro.initial = partition_from_json(read_json_file(a.initial));
  Trace t = run_dynamics(g, a.k, make_scheduler(a.policy, gl.seed), ro);
  if (!a.trace.empty()) {
    std::ofstream os(a.trace);
    if (!os) throw InputError("cannot write " + a.trace);
    write_trace_jsonl(os, t);
  }
  if (!a.out.empty()) write_json_file(a.out, partition_to_json(t.final));
  ExtInt f = global_utility(g, t.final);
  Json j = trace_summary_json(t);
  j["f"] = ext_to_json(f);
  j["final"] = partition_to_json(t.final);
  std::ostringstream os;
  os << "status=" << status_name(t.status) << " steps=" << t.num_steps << " f=" << f << "\nfinal=" << t.final.str()
     << '\n';
  emit(gl, j, os.str());
  return kOk;
}

// ---------------------------------------------------------------- stability

struct StabilityArgs {
  std::string game, mode = "exists", partition;
  int k = 1;
  bool gossip = false, merge_twins = false;
};

int run_stability_cmd(const Global& gl, const StabilityArgs& a) {
  Game g = load_game(a.game);
  SearchOptions o = gl.search();
  o.merge_twins = a.merge_twins;
  Json j;
  j["mode"] = a.mode;
  j["k"] = a.k;
  std::ostringstream os;
  if (a.mode == "exists") {
    auto p = exists_k_stable(g, a.k, a.gossip, o);
    j["exists"] = p.has_value();
    if (p) j["partition"] = partition_to_json(*p);
    os << (p ? p->str() : "none") << '\n';
  } else if (a.mode == "all") {
    auto all = all_k_stable(g, a.k, a.gossip, o);
    Json arr = Json::array();
    os << "count=" << all.size() << '\n';
    for (const auto& p : all) {
      arr.push_back(partition_to_json(p));
      os << p.str() << '\n';
    }
    j["count"] = all.size();
    j["partitions"] = arr;
  } else if (a.mode == "count") {
    auto c = count_feasible_partitions(g, o);
    j["feasible_partitions"] = c;
    os << "feasible=" << c << '\n';
  } else if (a.mode == "check") {
    if (a.partition.empty()) throw PreconditionError("--mode check needs --partition");
    Partition p = partition_from_json(read_json_file(a.partition));
    if (p.n() != g.n()) throw InputError("field 'n': partition size differs from the game");
    auto d = first_deviation(g, p, a.k);
    bool gossip_ok = !a.gossip || enumerate_gossip(g, p).empty();
    bool stable = !d && gossip_ok;
    j["stable"] = stable;
    if (d) j["deviation"] = d->str();
    os << (stable ? "stable" : "unstable");
    if (d) os << " deviation=" << d->str();
    if (!d && !gossip_ok) os << " gossip";
    os << '\n';
  } else if (a.mode == "longest") {
    auto r = longest_sequence(g, a.k, o);
    if (r.length)
      j["length"] = *r.length;
    else
      j["length"] = "cycle";
    os << (r.length ? "length=" + std::to_string(*r.length) : std::string("cycle")) << '\n';
  } else {
    throw PreconditionError("unknown mode '" + a.mode + "' (exists, all, count, check, longest)");
  }
  emit(gl, j, os.str());
  return kOk;
}

// ---------------------------------------------------------------- lattice

std::string parts_str(const IntegerPartition& q) {
  std::string s;
  for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + std::to_string(q[i]);
  return "(" + s + ")";
}

int run_lattice_cmd(const Global& gl, int n, const std::string& mode) {
  if (n < 1) throw PreconditionError("--n must be positive");
  Json j;
  j["n"] = n;
  std::ostringstream os;
  int code = kOk;
  if (mode == "chain") {
    auto path = longest_chain_path(n);
    Json arr = Json::array();
    for (const auto& q : path) {
      arr.push_back(q);
      os << parts_str(q) << '\n';
    }
    os << "length=" << path.size() - 1 << '\n';
    j["chain"] = arr;
    j["length"] = path.size() - 1;
  } else if (mode == "verify") {
    auto chain = longest_chain(n);
    auto formula = L1_formula(n);
    auto dfs = longest_sequence(uniform_game(n), 1, gl.search()).length;
    bool ok = dfs && chain == formula && *dfs == formula;
    os << "chain=" << chain << " formula=" << formula << " dfs=" << (dfs ? std::to_string(*dfs) : "cycle") << ' '
       << (ok ? "OK" : "FAIL") << '\n';
    j["chain"] = chain;
    j["formula"] = formula;
    if (dfs) j["dfs"] = *dfs;
    j["verdict"] = ok ? "PASS" : "FAIL";
    code = ok ? kOk : kFail;
  } else if (mode == "table") {
    Json rows = Json::array();
    os << "n,partitions,formula,chain\n";
    for (int m = 1; m <= n; ++m) {
      auto p = integer_partition_count(m);
      auto f = L1_formula(m);
      auto c = longest_chain(m);
      os << m << ',' << p << ',' << f << ',' << c << '\n';
      rows.push_back({{"n", m}, {"partitions", p}, {"formula", f}, {"chain", c}});
    }
    j["rows"] = rows;
  } else {
    throw PreconditionError("unknown mode '" + mode + "' (chain, verify, table)");
  }
  emit(gl, j, os.str());
  return code;
}

// ---------------------------------------------------------------- cascade

struct CascadeArgs {
  int k = 3, t = 4;
  bool realize = false;
  std::string csv, schedule = "outer";
  int c = 0;
};

int run_cascade_cmd(const Global& gl, const CascadeArgs& a) {
  Json j;
  std::ostringstream os;
  bool ok = true;
  long long n = 0, moves = 0;
  int c = 0, bal = 0;
  std::string good = "NA";
  std::string realized = "skipped";
  auto check_realization = [&](const std::optional<Realization>& r, std::size_t expected) {
    if (!r) return;
    bool fine = r->vectors_agree && r->moves == expected;
    realized = fine ? "OK" : "FAIL";
    ok &= fine;
  };
  if (a.k == 3) {
    K3Options o;
    if (a.schedule == "outer")
      o.schedule = K3Schedule::OuterAscending;
    else if (a.schedule == "topdown")
      o.schedule = K3Schedule::TopDown;
    else
      throw PreconditionError("unknown schedule '" + a.schedule + "' (outer, topdown)");
    if (a.c > 0) o.c = a.c;
    o.realize = a.realize;
    K3Result r;
    try {
      r = build_k3(a.t, o);
      check_realization(r.realization, r.seq.size());
    } catch (const InsufficientGroups& e) {
      realized = "FAIL";
      ok = false;
      j["error"] = e.what();
    }
    moves = static_cast<long long>(r.seq.size());
    bal = r.balance;
    c = r.c;
    n = r.n;
    bool count_ok = moves == k3_move_count(a.t);
    ok &= count_ok;
    os << "moves=" << moves << " balance=" << bal << " realized=" << realized << '\n';
    os << "t=" << a.t << " L=" << r.L << " c=" << c << " n=" << n << " formula=" << k3_move_count(a.t) << ' '
       << pass_fail(ok) << '\n';
    j["L"] = r.L;
    j["formula"] = k3_move_count(a.t);
  } else if (a.k == 4) {
    if (a.schedule != "outer") throw PreconditionError("--schedule applies to k = 3 only");
    K4Options o;
    if (a.c > 0) o.c = a.c;
    o.realize = a.realize;
    K4Result r;
    try {
      r = build_k4(a.t, o);
      check_realization(r.realization, r.levels.back().seq.size());
    } catch (const InsufficientGroups& e) {
      realized = "FAIL";
      ok = false;
      j["error"] = e.what();
    }
    if (r.levels.empty()) throw PreconditionError("no levels were built");
    const auto& top = r.levels.back();
    moves = static_cast<long long>(top.seq.size());
    bal = top.balance;
    c = r.c;
    n = r.n;
    bool all_good = true, all_sym = true;
    Json lv = Json::array();
    for (const auto& z : r.levels) {
      all_good &= z.good;
      all_sym &= z.symmetric;
      lv.push_back({{"level", z.level}, {"moves", z.seq.size()}, {"s", z.s}, {"balance", z.balance},
                    {"symmetric", z.symmetric}, {"good", z.good}});
      os << "level=" << z.level << " moves=" << z.seq.size() << " s=" << z.s << " balance=" << z.balance
         << " symmetric=" << (z.symmetric ? "yes" : "no") << " good=" << (z.good ? "yes" : "no") << '\n';
    }
    good = all_good ? "1" : "0";
    ok &= all_good && all_sym;
    os << "moves=" << moves << " balance=" << bal << " realized=" << realized << '\n';
    os << "t=" << a.t << " T=" << r.T << " L=" << r.L << " c=" << c << " c1=" << r.c1 << " n=" << n << ' '
       << pass_fail(ok) << '\n';
    j["T"] = r.T;
    j["L"] = r.L;
    j["c1"] = r.c1;
    j["levels"] = lv;
  } else {
    throw PreconditionError("--k must be 3 or 4");
  }
  j["k"] = a.k;
  j["t"] = a.t;
  j["n"] = n;
  j["c"] = c;
  j["moves"] = moves;
  j["balance"] = bal;
  j["realized"] = realized;
  j["verdict"] = ok ? "PASS" : "FAIL";
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    if (!out) throw InputError("cannot write " + a.csv);
    out << "t,n,c,total_moves,balance,good_property_ok\n"
        << a.t << ',' << n << ',' << c << ',' << moves << ',' << bal << ',' << good << '\n';
  }
  emit(gl, j, os.str());
  return ok ? kOk : kFail;
}

// ---------------------------------------------------------------- gallery

int run_gallery_cmd(const Global& gl, const std::string& action, const std::string& name,
                    const std::vector<std::string>& kv, const std::string& out) {
  if (action == "list") {
    Json arr = Json::array();
    std::ostringstream os;
    for (const auto& nm : gallery_names()) {
      arr.push_back(nm);
      os << nm << '\n';
    }
    emit(gl, arr, os.str());
    return kOk;
  }
  if (name.empty()) throw PreconditionError("gallery " + action + " needs a construction name");
  GalleryItem item = gallery_item(name, parse_params(kv));
  if (action == "build") {
    Json j = game_to_json(item.game);
    if (out.empty())
      std::cout << j.dump(1) << '\n';
    else
      write_json_file(out, j);
    return kOk;
  }
  if (action != "verify") throw PreconditionError("unknown gallery action '" + action + "' (list, build, verify)");
  VerifyReport rep = verify(item, gl.search());
  Json j;
  j["name"] = name;
  j["n"] = item.game.n();
  Json claims = Json::array();
  std::ostringstream os;
  for (const auto& [text, r] : rep.results) {
    claims.push_back({{"claim", text}, {"verdict", verdict_name(r.verdict)}, {"detail", r.detail}});
    os << verdict_name(r.verdict) << "  " << text;
    if (!r.detail.empty()) os << "  (" << r.detail << ')';
    os << '\n';
  }
  os << verdict_name(rep.overall) << '\n';
  j["claims"] = claims;
  j["verdict"] = verdict_name(rep.overall);
  emit(gl, j, os.str());
  switch (rep.overall) {
    case Verdict::Pass: return kOk;
    case Verdict::Fail: return kFail;
    default: return kInfeasible;
  }
}

// ---------------------------------------------------------------- poa

struct PoaArgs {
  std::string game, h = "eps";
  int k = 1, q = 1, greedy_runs = 0;
  bool delta = false;
};

Json poa_json(const PriceOfAnarchy& r) {
  Json j;
  j["poa"] = r.str();
  j["best"] = ext_to_json(r.best);
  if (r.kind != PriceOfAnarchy::Kind::Undefined) j["worst"] = ext_to_json(r.worst);
  if (r.best_partition) j["best_partition"] = partition_to_json(*r.best_partition);
  if (r.worst_partition) j["worst_partition"] = partition_to_json(*r.worst_partition);
  return j;
}

int run_poa_cmd(const Global& gl, const PoaArgs& a) {
  Game g = load_game(a.game);
  SearchOptions o = gl.search();
  Json j;
  std::ostringstream os;
  int code = kOk;
  if (a.q == 1) {
    auto r = price_of_anarchy(g, a.k, o);
    j = poa_json(r);
    os << "poa=" << r.str() << " best=" << r.best;
    if (r.kind != PriceOfAnarchy::Kind::Undefined) os << " worst=" << r.worst;
    os << '\n';
    if (r.best_partition) os << "best_partition=" << r.best_partition->str() << '\n';
    if (r.worst_partition) os << "worst_partition=" << r.worst_partition->str() << '\n';
  } else {
    HFunction h = make_h(a.h, g);
    auto r = price_of_anarchy_config(g, h, a.q, a.k, o);
    j["poa"] = r.str();
    j["h"] = h.str();
    j["best"] = rational_to_json(r.best->value);
    j["best_configuration"] = configuration_to_json(r.best->config);
    os << "poa=" << r.str() << " h=" << h.str() << " best=" << r.best->value.str();
    if (r.worst) {
      j["worst"] = rational_to_json(r.worst->value);
      j["worst_configuration"] = configuration_to_json(r.worst->config);
      os << " worst=" << r.worst->value.str();
    }
    os << '\n';
  }
  if (a.delta) {
    if (a.q != 1) throw PreconditionError("--delta applies to q = 1");
    auto d = check_delta_bound(g, a.k, o);
    Json dj;
    dj["delta_plus"] = d.delta_plus;
    dj["m_plus"] = d.m_plus;
    dj["w_p"] = d.w_p;
    dj["partitions"] = d.partitions;
    dj["key_step"] = d.key_step;
    dj["count_ok"] = d.count_ok;
    dj["upper_ok"] = d.upper_ok;
    dj["ratio_ok"] = d.ratio_ok;
    dj["bound"] = rational_str(d.bound);
    dj["verdict"] = pass_fail(d.ok());
    j["delta"] = dj;
    os << "delta_plus=" << d.delta_plus << " m_plus=" << d.m_plus << " w_p=" << d.w_p << " bound=" << rational_str(d.bound)
       << " partitions=" << d.partitions << " key_step=" << d.key_step << " count=" << d.count_ok
       << " upper=" << d.upper_ok << " ratio=" << d.ratio_ok << ' ' << pass_fail(d.ok()) << '\n';
    if (!d.ok()) code = kFail;
  }
  if (a.greedy_runs > 0) {
    HFunction h = make_h(a.h, g);
    auto r = sample_greedy_bounds(g, h, a.q, a.greedy_runs, gl.seed, o);
    Json gj;
    gj["runs"] = r.runs;
    gj["best"] = rational_to_json(r.best);
    gj["worst_sampled"] = rational_to_json(r.worst);
    gj["worst_steps"] = r.worst_steps;
    gj["positive_applies"] = r.positive_applies;
    gj["verdict"] = pass_fail(r.ok());
    j["greedy"] = gj;
    os << "greedy runs=" << r.runs << " best=" << r.best.str() << " worst_sampled=" << r.worst.str()
       << " steps=" << r.worst_steps << ' ' << pass_fail(r.ok()) << '\n';
    if (!r.ok()) code = kFail;
  }
  emit(gl, j, os.str());
  return code;
}

// ---------------------------------------------------------------- hyper

struct HyperArgs {
  std::string game, mode = "run", partition, policy = "firstlex";
  int k = 1;
};

int run_hyper_cmd(const Global& gl, const HyperArgs& a) {
  HyperGame H = hypergame_from_json(read_json_file(a.game));
  Json j;
  std::ostringstream os;
  int code = kOk;
  if (a.mode == "run") {
    HyperOptions ho;
    ho.k = a.k;
    ho.record_steps = false;
    auto t = run_hyper_dynamics(H, make_scheduler(a.policy, gl.seed), ho);
    ExtInt phi = hyper_potential(H, t.final);
    j["status"] = status_name(t.status);
    j["steps"] = t.num_steps;
    j["phi"] = ext_to_json(phi);
    j["final"] = partition_to_json(t.final);
    os << "status=" << status_name(t.status) << " steps=" << t.num_steps << " phi=" << phi << "\nfinal="
       << t.final.str() << '\n';
  } else if (a.mode == "stable") {
    if (a.partition.empty()) throw PreconditionError("--mode stable needs --partition");
    Partition p = partition_from_json(read_json_file(a.partition));
    if (p.n() != H.n()) throw InputError("field 'n': partition size differs from the hypergraph");
    bool s = is_k_stable_hyper(H, p, a.k);
    j["stable"] = s;
    os << (s ? "stable" : "unstable") << '\n';
  } else if (a.mode == "girth") {
    auto gth = berge_girth(H);
    if (gth)
      j["girth"] = *gth;
    else
      j["girth"] = "inf";
    os << "girth=" << (gth ? std::to_string(*gth) : "inf") << '\n';
  } else if (a.mode == "count") {
    bool ok = acyclic_count_check(H);
    j["verdict"] = pass_fail(ok);
    j["components"] = hyper_components(H);
    os << "components=" << hyper_components(H) << ' ' << pass_fail(ok) << '\n';
    code = ok ? kOk : kFail;
  } else {
    throw PreconditionError("unknown mode '" + a.mode + "' (run, stable, girth, count)");
  }
  emit(gl, j, os.str());
  return code;
}

// ---------------------------------------------------------------- multichannel

struct MultiArgs {
  std::string game, mode = "run", h = "eps", policy = "firstlex", target, out;
  int q = 2, k = 1;
  std::size_t max_steps = 1'000'000;
};

int run_multichannel_cmd(const Global& gl, const MultiArgs& a) {
  Game g = load_game(a.game);
  HFunction h = make_h(a.h, g);
  SearchOptions o = gl.search();
  Json j;
  j["q"] = a.q;
  j["h"] = h.str();
  std::ostringstream os;
  if (a.mode == "run") {
    MultiOptions mo;
    mo.k = a.k;
    mo.max_steps = a.max_steps;
    mo.record_steps = false;
    auto t = run_multichannel_dynamics(g, h, a.q, make_scheduler(a.policy, gl.seed), mo);
    auto f = config_global_utility(g, h, t.final);
    j["status"] = status_name(t.status);
    j["steps"] = t.num_steps;
    j["f"] = rational_to_json(f);
    j["final"] = configuration_to_json(t.final);
    if (!a.out.empty()) write_json_file(a.out, configuration_to_json(t.final));
    os << "status=" << status_name(t.status) << " steps=" << t.num_steps << " f=" << f.str() << "\nfinal="
       << t.final.str() << '\n';
  } else if (a.mode == "exists") {
    auto c = exists_k_stable_config(g, h, a.q, a.k, o);
    j["exists"] = c.has_value();
    if (c) j["configuration"] = configuration_to_json(*c);
    os << (c ? c->str() : "none") << '\n';
  } else if (a.mode == "max") {
    auto r = max_configuration(g, h, a.q, o);
    j["f"] = rational_to_json(r.value);
    j["configuration"] = configuration_to_json(r.config);
    os << "f=" << r.value.str() << "\nconfiguration=" << r.config.str() << '\n';
  } else if (a.mode == "min-channels") {
    if (a.target.empty()) throw PreconditionError("--mode min-channels needs --target");
    Rational U;
    try {
      U = Rational(a.target);
    } catch (const std::runtime_error&) {
      throw PreconditionError("bad --target '" + a.target + "'");
    }
    try {
      int q = min_channels(g, h, U, -1, o);
      j["q_min"] = q;
      os << "q_min=" << q << '\n';
    } catch (const NotAchievable& e) {
      j["q_min"] = nullptr;
      j["reason"] = e.what();
      os << "not achievable: " << e.what() << '\n';
    }
  } else if (a.mode == "transform") {
    auto L = multichannel_transform(g, a.q, h);
    j["n"] = L.game.n();
    j["scale"] = rational_str(L.scale);
    j["offset"] = rational_str(L.offset);
    if (!a.out.empty()) write_json_file(a.out, game_to_json(L.game));
    os << "n=" << L.game.n() << " scale=" << rational_str(L.scale) << " offset=" << rational_str(L.offset) << '\n';
  } else {
    throw PreconditionError("unknown mode '" + a.mode + "' (run, exists, max, min-channels, transform)");
  }
  emit(gl, j, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative coloring games: dynamics, stability, cascades, gallery, efficiency"};
  app.require_subcommand(1);
  app.fallthrough();
  Global gl;
  app.add_option("--seed", gl.seed, "Seed for random schedules");
  app.add_option("--budget", gl.budget, "Search budget (partitions, configurations or DFS states)");
  app.add_flag("--json", gl.json, "Print JSON instead of text");
  app.add_option("--threads", gl.threads, "Worker threads; searches are sequential, so results never depend on it")
      ->check(CLI::PositiveNumber);

  int code = kOk;

  DynamicsArgs da;
  auto* dyn = app.add_subcommand("dynamics", "Run deviation dynamics from singletons (or --initial)");
  dyn->add_option("--game", da.game, "Game JSON")->required();
  dyn->add_option("--k", da.k, "Largest coalition size")->check(CLI::PositiveNumber);
  dyn->add_option("--policy", da.policy, "firstlex, random, mincoalition or maxgain");
  dyn->add_option("--max-steps", da.max_steps, "Step cap");
  dyn->add_option("--initial", da.initial, "Initial partition JSON");
  dyn->add_option("--trace", da.trace, "Write the trace as JSONL");
  dyn->add_option("-o,--out", da.out, "Write the final partition JSON");
  dyn->add_flag("--gossip", da.gossip, "Also apply gossip merges");
  dyn->add_flag("--check-potential", da.check_potential, "Assert the utility-variation bound on every step");
  dyn->footer(
      "Cycles are detected with a set of visited partitions. When it holds 2M\n"
      "entries it is cleared, so a cycle is still reported one lap later.");
  dyn->callback([&] { code = run_dynamics_cmd(gl, da); });

  StabilityArgs sa;
  auto* stab = app.add_subcommand("stability", "Stability checks and exhaustive searches");
  stab->add_option("--game", sa.game, "Game JSON")->required();
  stab->add_option("--k", sa.k, "Coalition size")->check(CLI::PositiveNumber);
  stab->add_option("--mode", sa.mode, "exists, all, count, check or longest");
  stab->add_option("--partition", sa.partition, "Partition JSON for --mode check");
  stab->add_flag("--gossip", sa.gossip, "Require gossip stability too");
  stab->add_flag("--merge-twins", sa.merge_twins, "Keep twin classes together (exact for existence)");
  stab->callback([&] { code = run_stability_cmd(gl, sa); });

  int lat_n = 6;
  std::string lat_mode = "verify";
  auto* lat = app.add_subcommand("lattice", "Dominance lattice of integer partitions");
  lat->add_option("--n", lat_n, "Number of nodes")->required();
  lat->add_option("--mode", lat_mode, "chain, verify or table");
  lat->callback([&] { code = run_lattice_cmd(gl, lat_n, lat_mode); });

  CascadeArgs ca;
  auto* cas = app.add_subcommand("cascade", "Long deviation sequences for k = 3 and k = 4");
  cas->add_option("--k", ca.k, "3 or 4")->required();
  cas->add_option("--t", ca.t, "Construction parameter")->required();
  cas->add_option("--c", ca.c, "Copies per size (default: the measured balance)");
  cas->add_option("--schedule", ca.schedule, "k = 3 nesting order: outer or topdown");
  cas->add_flag("--realize", ca.realize, "Play the sequence on a concrete partition");
  cas->add_option("--csv", ca.csv, "Write a CSV summary row");
  cas->callback([&] { code = run_cascade_cmd(gl, ca); });

  std::string gal_action, gal_name, gal_out;
  std::vector<std::string> gal_params;
  auto* gal = app.add_subcommand("gallery", "Counterexample and reduction constructions");
  gal->add_option("action", gal_action, "list, build or verify")->required();
  gal->add_option("name", gal_name, "Construction name");
  gal->add_option("--params,--param", gal_params, "key=value parameters");
  gal->add_option("-o,--out", gal_out, "Output file for build");
  gal->callback([&] { code = run_gallery_cmd(gl, gal_action, gal_name, gal_params, gal_out); });

  PoaArgs pa;
  auto* poa = app.add_subcommand("poa", "Price of anarchy by exhaustive search");
  poa->add_option("--game", pa.game, "Game JSON")->required();
  poa->add_option("--k", pa.k, "Coalition size")->check(CLI::PositiveNumber);
  poa->add_option("--q", pa.q, "Channels")->check(CLI::PositiveNumber);
  poa->add_option("--share", pa.h, "Sharing function for q > 1: indicator, eps or eps=<rational>");
  poa->add_flag("--delta", pa.delta, "Check the positive-degree bound chain (k >= 2)");
  poa->add_option("--greedy-runs", pa.greedy_runs, "Sample dynamics equilibria and check their bounds");
  poa->callback([&] { code = run_poa_cmd(gl, pa); });

  HyperArgs ha;
  auto* hyp = app.add_subcommand("hyper", "Hypergraph games");
  hyp->add_option("--game", ha.game, "HyperGame JSON")->required();
  hyp->add_option("--mode", ha.mode, "run, stable, girth or count");
  hyp->add_option("--k", ha.k, "Coalition size")->check(CLI::PositiveNumber);
  hyp->add_option("--partition", ha.partition, "Partition JSON for --mode stable");
  hyp->add_option("--policy", ha.policy, "Scheduler for --mode run");
  hyp->callback([&] { code = run_hyper_cmd(gl, ha); });

  MultiArgs ma;
  auto* mul = app.add_subcommand("multichannel", "Configurations with q channels");
  mul->add_option("--game", ma.game, "Game JSON")->required();
  mul->add_option("--q", ma.q, "Channels")->check(CLI::PositiveNumber);
  mul->add_option("--k", ma.k, "Coalition size")->check(CLI::PositiveNumber);
  mul->add_option("--share", ma.h, "indicator, eps (1/(4N)) or eps=<rational>");
  mul->add_option("--mode", ma.mode, "run, exists, max, min-channels or transform");
  mul->add_option("--policy", ma.policy, "Scheduler for --mode run");
  mul->add_option("--max-steps", ma.max_steps, "Step cap for --mode run");
  mul->add_option("--target", ma.target, "Utility target for --mode min-channels");
  mul->add_option("-o,--out", ma.out, "Output file (final configuration or transformed game)");
  mul->callback([&] { code = run_multichannel_cmd(gl, ma); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  } catch (const SearchTooLarge& e) {
    std::cerr << "INFEASIBLE: " << e.what() << '\n';
    if (gl.json) std::cout << Json{{"verdict", "INFEASIBLE"}, {"reason", e.what()}}.dump(1) << '\n';
    return kInfeasible;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return code;
}
