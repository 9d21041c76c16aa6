// bhs-lab: run, sweep and verify black-hole search simulations.
//
// Exit codes: 0 solved / all green, 1 violation or failed check,
// 2 configuration error, 3 horizon reached without a declaration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "bhs/adversary.hpp"
#include "bhs/ebhs.hpp"
#include "bhs/graph.hpp"
#include "bhs/harness.hpp"
#include "bhs/rooted.hpp"
#include "bhs/runtime.hpp"
#include "bhs/scattered.hpp"
#include "bhs/trace_io.hpp"
#include "json.hpp"

using namespace bhs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitHorizon = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::solved: return kExitOk;
    case Verdict::unsolved_horizon: return kExitHorizon;
    case Verdict::violation: return kExitFail;
  }
  return kExitFail;
}

std::shared_ptr<const Footprint> load_graph(const std::string& spec) {
  try {
    if (spec.rfind("file:", 0) == 0) return std::make_shared<const Footprint>(load_graph_file(spec.substr(5)));
    return std::make_shared<const Footprint>(generate(spec));
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

// "ring:4..10" expands to ring:4 ... ring:10; anything else is kept as is.
std::vector<std::string> expand_range(const std::string& spec) {
  static const std::regex range(R"(^([a-z_]+):(\d+)\.\.(\d+)$)");
  std::smatch m;
  if (!std::regex_match(spec, m, range)) return {spec};
  std::vector<std::string> out;
  for (int i = std::stoi(m[2]); i <= std::stoi(m[3]); ++i) out.push_back(m[1].str() + ":" + std::to_string(i));
  return out;
}

std::vector<Placement> read_placement(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open placement file " + path);
  std::vector<Placement> out;
  NodeId node;
  AgentId id;
  while (in >> node >> id) out.push_back({node, id});
  if (!in.eof()) throw ConfigError("malformed placement file " + path);
  return out;
}

Emergence parse_emergence(const std::string& s) {
  static const std::regex re(R"(^(\d+):(\d+)(?::(\d+))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ConfigError("--emerge expects NODE:ROUND[:SUBROUND]");
  Emergence e;
  e.node = std::stoi(m[1]);
  e.round = std::stol(m[2]);
  e.sub_round = m[3].matched ? std::stoi(m[3]) : 1;
  return e;
}

std::unique_ptr<Strategy> strategy(const std::string& spec) {
  try {
    return make_strategy(spec);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

void write_trace(const std::string& path, const Trace& trace) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  write_trace_jsonl(out, trace);
}

// ------------------------------------------------------------------- run

struct RunOpts {
  std::string graph;
  std::string algo = "scattered";
  std::optional<NodeId> bh;
  std::optional<int> agents;
  std::string placement;
  NodeId home = 0;
  std::uint64_t seed = 1;
  std::string adversary = "none";
  long horizon = 0;
  std::string emerge;
  std::string backend = "dfs";
  std::string trace_path;
  std::string outcome_path;
};

struct DynamicRun {
  RunConfig cfg;
  ComputeFn algo;
};

DynamicRun dynamic_config(const RunOpts& o, std::shared_ptr<const Footprint> fp) {
  if (!o.emerge.empty()) throw ConfigError("--emerge only applies to --algo ebhs");
  if (!o.bh) throw ConfigError("--bh is required for --algo " + o.algo);
  if (*o.bh < 0 || *o.bh >= fp->node_count()) throw ConfigError("--bh out of range");
  DynamicRun r;
  r.cfg.footprint = fp;
  r.cfg.black_hole = *o.bh;
  r.cfg.horizon = o.horizon;
  const bool rooted = o.algo == "rooted";
  r.algo = rooted ? ComputeFn(rooted::standalone) : ComputeFn(scattered::compute);
  if (!o.placement.empty()) {
    r.cfg.placement = read_placement(o.placement);
    if (o.agents && *o.agents != static_cast<int>(r.cfg.placement.size()))
      throw ConfigError("--agents disagrees with the placement file");
    return r;
  }
  const int count = o.agents.value_or(rooted ? harness::kRootedAgents : 2 * fp->degree(*o.bh) + 17);
  if (count < 1) throw ConfigError("--agents must be positive");
  if (rooted) {
    if (o.home == *o.bh || o.home < 0 || o.home >= fp->node_count()) throw ConfigError("--home must be a safe node");
    r.cfg.placement = harness::rooted_placement(*fp, o.home, count, o.seed);
  } else {
    r.cfg.placement = scatter_agents(*fp, *o.bh, count, o.seed);
  }
  return r;
}

int cmd_run(const RunOpts& o) {
  auto fp = load_graph(o.graph);
  nlohmann::ordered_json meta;
  meta["graph"] = o.graph;
  meta["algo"] = o.algo;
  SimOutcome outcome;
  Trace trace;
  std::vector<std::string> diagnostics;

  if (o.algo == "ebhs") {
    if (o.bh) throw ConfigError("--algo ebhs takes the black hole as --emerge NODE:ROUND[:SUBROUND], not --bh");
    if (o.adversary != "none") throw ConfigError("--adversary does not apply to static graphs");
    EbhsConfig cfg;
    cfg.footprint = fp;
    cfg.home = o.home;
    cfg.horizon_ticks = o.horizon;
    try {
      cfg.backend = backend_from_string(o.backend);
      if (!o.emerge.empty()) cfg.emergence = parse_emergence(o.emerge);
      validate_ebhs(cfg);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    EbhsResult res = run_ebhs(cfg);
    meta["home"] = o.home;
    meta["backend"] = to_string(cfg.backend);
    if (res.emergence_tick) meta["emergence_tick"] = *res.emergence_tick;
    if (res.declaration_tick) meta["declaration_tick"] = *res.declaration_tick;
    outcome = std::move(res.outcome);
    trace = std::move(res.trace);
    diagnostics = std::move(res.diagnostics);
  } else if (o.algo == "scattered" || o.algo == "rooted") {
    DynamicRun r = dynamic_config(o, fp);
    auto adv = strategy(o.adversary);
    RunResult res;
    try {
      res = run(r.cfg, r.algo, *adv);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    meta["black_hole"] = *o.bh;
    meta["agents"] = r.cfg.placement.size();
    meta["adversary"] = o.adversary;
    meta["seed"] = o.seed;
    outcome = std::move(res.outcome);
    trace = std::move(res.trace);
    diagnostics = std::move(res.diagnostics);
  } else {
    throw ConfigError("unknown --algo " + o.algo);
  }
  if (!diagnostics.empty()) meta["diagnostics"] = diagnostics;

  write_trace(o.trace_path, trace);
  const std::string json = outcome_json(outcome, meta.dump());
  if (o.outcome_path.empty())
    std::cout << json << '\n';
  else
    write_file(o.outcome_path, json + "\n");
  return exit_for(outcome.verdict);
}

// ----------------------------------------------------------------- sweep

struct SweepOpts {
  std::vector<std::string> graphs;
  std::string algo = "scattered";
  std::optional<NodeId> bh;
  std::vector<std::string> adversaries{"none"};
  int seeds = 1;
  std::string csv_path;
  std::string counterexample_dir = ".";
};

int cmd_sweep(const SweepOpts& o) {
  if (o.algo != "scattered" && o.algo != "rooted") throw ConfigError("sweep supports --algo scattered|rooted");
  std::vector<harness::DynamicJob> jobs;
  for (const auto& spec : o.graphs) {
    for (const auto& name : expand_range(spec)) {
      harness::CorpusGraph g{name, load_graph(name)};
      const NodeId bh = o.bh.value_or(g.fp->node_count() - 1);
      if (bh < 0 || bh >= g.fp->node_count()) throw ConfigError("--bh out of range for " + name);
      for (const auto& a : o.adversaries) {
        strategy(a);  // validate early
        for (int s = 1; s <= o.seeds; ++s) {
          harness::DynamicJob j{g, bh, static_cast<std::uint64_t>(s), a, 0};
          if (o.algo == "rooted") {
            j.rooted = true;
            j.home = bh == 0 ? 1 : 0;
          }
          jobs.push_back(j);
        }
      }
    }
  }
  const auto checks = o.algo == "rooted" ? harness::rooted_checks() : harness::all_checks();
  const auto cases = harness::run_dynamic_all(jobs, checks);

  std::ostringstream csv;
  csv << "graph,n,m,delta_bh,agents,adversary,rounds,deaths,verdict,seed,group_formed\n";
  for (const auto& c : cases) {
    const auto& fp = *c.job.graph.fp;
    const int agents = c.job.rooted ? harness::kRootedAgents : 2 * fp.degree(c.job.black_hole) + 17;
    const auto& out = c.result.outcome;
    csv << c.job.graph.name << ',' << fp.node_count() << ',' << fp.edge_count() << ',' << fp.degree(c.job.black_hole)
        << ',' << agents << ',' << c.job.adversary << ',' << out.rounds_elapsed << ',' << out.dead.size() << ','
        << to_string(out.verdict) << ',' << c.job.placement_seed << ',' << (out.group_formed ? 1 : 0) << '\n';
  }
  if (o.csv_path.empty())
    std::cout << csv.str();
  else
    write_file(o.csv_path, csv.str());

  for (const auto& c : cases) {
    if (c.report.ok()) continue;
    // Rerun to recover the trace (the pool drops traces to keep memory flat).
    const auto again = harness::run_dynamic(c.job, checks);
    const std::string path = o.counterexample_dir + "/counterexample.jsonl";
    write_trace(path, again.result.trace);
    std::cerr << "violation: " << harness::label(c.job) << "\n" << c.report.summary() << "counterexample: " << path << '\n';
    return kExitFail;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
  std::string suite = "all";
  harness::SuiteOptions suite_opts;
  std::string json_path;
};

int cmd_verify(const VerifyOpts& o) {
  harness::AuditReport rep;
  try {
    rep = harness::verify_suite(o.suite, o.suite_opts);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  std::cout << "suite " << o.suite << ": " << (rep.ok() ? "PASS" : "FAIL") << '\n' << rep.summary();
  if (!o.json_path.empty()) write_file(o.json_path, rep.to_json() + "\n");
  return rep.ok() ? kExitOk : kExitFail;
}

int cmd_graph(const std::string& spec, const std::string& out_path) {
  auto fp = load_graph(spec);
  std::ostringstream s;
  write_graph(s, *fp);
  if (out_path.empty())
    std::cout << s.str();
  else
    write_file(out_path, s.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-hole search simulator"};
  app.require_subcommand(1);

  RunOpts ro;
  auto* run_cmd = app.add_subcommand("run", "Run one simulation");
  run_cmd->add_option("--graph", ro.graph, "Generator spec (ring:8, random:6,9,1, ...) or file:PATH")->required();
  run_cmd->add_option("--algo", ro.algo, "scattered | rooted | ebhs")->check(CLI::IsMember({"scattered", "rooted", "ebhs"}));
  run_cmd->add_option("--bh", ro.bh, "Black-hole node (scattered, rooted)");
  run_cmd->add_option("--agents", ro.agents, "Agent count (default 2*deg(bh)+17, or 9 for rooted)");
  run_cmd->add_option("--placement", ro.placement, "Placement file: lines 'node_id agent_id'");
  run_cmd->add_option("--home", ro.home, "Home node (rooted, ebhs)");
  run_cmd->add_option("--seed", ro.seed, "Placement seed");
  run_cmd->add_option("--adversary", ro.adversary, "none | random:SEED | script:PATH | block-smallest | persistent:U,V");
  run_cmd->add_option("--horizon", ro.horizon, "Rounds (ticks for ebhs); 0 picks the default");
  run_cmd->add_option("--emerge", ro.emerge, "NODE:ROUND[:SUBROUND] (ebhs)");
  run_cmd->add_option("--backend", ro.backend, "dfs | uxs | uxs-known-n (ebhs)");
  run_cmd->add_option("--trace", ro.trace_path, "Trace JSONL output path");
  run_cmd->add_option("--outcome", ro.outcome_path, "Outcome JSON output path (default stdout)");

  SweepOpts so;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of simulations and emit CSV");
  sweep_cmd->add_option("--graph", so.graphs, "Graph specs; KIND:A..B expands to a range")->required();
  sweep_cmd->add_option("--algo", so.algo, "scattered | rooted");
  sweep_cmd->add_option("--bh", so.bh, "Black-hole node (default: last node)");
  sweep_cmd->add_option("--adversary", so.adversaries, "Adversary specs");
  sweep_cmd->add_option("--seeds", so.seeds, "Placement seeds 1..N")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--csv", so.csv_path, "CSV output path (default stdout)");
  sweep_cmd->add_option("--counterexample-dir", so.counterexample_dir, "Where a failing trace is written");

  VerifyOpts vo;
  auto* verify_cmd = app.add_subcommand("verify", "Run an oracle suite");
  verify_cmd->add_option("--suite", vo.suite, "scattered | exhaustive | rooted | ebhs | all")
      ->check(CLI::IsMember({"scattered", "exhaustive", "rooted", "ebhs", "all"}));
  verify_cmd->add_option("--seeds", vo.suite_opts.seeds, "Corpus placement seeds");
  verify_cmd->add_option("--threads", vo.suite_opts.threads, "Worker threads (0: all cores)");
  verify_cmd->add_flag("!--no-exhaustive", vo.suite_opts.exhaustive, "Skip the small-graph adversary trees");
  verify_cmd->add_option("--exhaustive-budget", vo.suite_opts.exhaustive_budget, "Expanded states per tree");
  verify_cmd->add_option("--exhaustive-horizon", vo.suite_opts.exhaustive_horizon, "Rounds per tree branch");
  verify_cmd->add_option("--json", vo.json_path, "Report JSON output path");

  std::string graph_spec, graph_out;
  auto* graph_cmd = app.add_subcommand("graph", "Write a graph in the text format");
  graph_cmd->add_option("--graph", graph_spec, "Generator spec or file:PATH")->required();
  graph_cmd->add_option("--out", graph_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(ro);
    if (*sweep_cmd) return cmd_sweep(so);
    if (*verify_cmd) return cmd_verify(vo);
    if (*graph_cmd) return cmd_graph(graph_spec, graph_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
