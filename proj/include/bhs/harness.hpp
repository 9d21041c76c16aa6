#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bhs/ebhs.hpp"
#include "bhs/graph.hpp"
#include "bhs/runtime.hpp"
#include "bhs/world.hpp"

namespace bhs::harness {

/// Named trace checks.
enum class Check {
  atmost_travel_info,  // at most one travel write per node per round
  atmost_marked_info,  // a mark is written only into a free slot
  min_move,            // the smallest id never follows before joining a group
  moves_12lm,          // successful moves per agent outside a group <= 12*l*m
  even_moves_24lm,     // no movement in odd rounds
  wbmemory,            // per-node occupancy <= 1 travel + 2 marks + grp stamp
  atmost16,            // > 16 blocked agents in an even round imply a group by the next even round
  round_bound,         // without a group, rounds <= 152*m*deg(bh)
  deaths,              // deaths <= 2*deg(bh)
  correctness,         // verdict solved, every declaration correct
  survivor,            // EBHS: at least one agent alive at the end
  latency,             // EBHS: declaration within the latency bound
  control_silent,      // EBHS: no declaration without emergence
};
const char* to_string(Check c);
/// Checks that apply to dynamic-model runs.
std::vector<Check> all_checks();
/// Checks that apply to EBHS runs.
std::vector<Check> ebhs_checks();

struct CheckResult {
  Check check = Check::correctness;
  bool pass = true;
  long failures = 0;
  std::string first_failure;  // case label + event index / reason
};

struct AuditReport {
  std::vector<CheckResult> checks;  // one per requested check
  long runs = 0;
  long max_deaths = 0;
  long max_rounds = 0;
  int max_marks = 0;
  int max_travel = 0;
  bool incomplete = false;
  std::vector<std::string> notes;

  bool ok() const;
  CheckResult* find(Check c);
  const CheckResult* find(Check c) const;
  void fail(Check c, const std::string& why);
  void merge(const AuditReport& other);
  std::string summary() const;
  std::string to_json() const;
};

AuditReport empty_report(const std::vector<Check>& checks);

/// What the auditor needs besides the trace.
struct AuditContext {
  const Footprint* footprint = nullptr;
  NodeId black_hole = 0;
  int agent_count = 0;
  std::vector<AgentId> ids;
  const SimOutcome* outcome = nullptr;  // needed by round_bound/deaths/correctness
  std::string label;
};

/// Replays a dynamic-model trace and validates the requested checks.
AuditReport audit_trace(const Trace& trace, const AuditContext& ctx, const std::vector<Check>& checks);

// ---------------------------------------------------------------- corpus

struct CorpusGraph {
  std::string name;  // generator spec
  std::shared_ptr<const Footprint> fp;
};

/// Rings 4-10, paths 4-8, ten random graphs (n <= 8, m <= 14), K4, 3x3 torus.
std::vector<CorpusGraph> corpus();
/// Spec of the i-th random corpus graph, i in 1..10.
std::string random_corpus_spec(int seed);

/// Every connected graph with 2..n_max nodes up to isomorphism (n_max <= 4).
std::vector<CorpusGraph> small_graphs(int n_max);

/// none, random:1..20, block-smallest, persistent on every non-bridge edge.
std::vector<std::string> adversary_set(const Footprint& fp);

// ------------------------------------------------------- dynamic oracles

struct DynamicJob {
  CorpusGraph graph;
  NodeId black_hole = 0;
  std::uint64_t placement_seed = 1;
  std::string adversary = "none";
  long horizon = 0;
  bool rooted = false;  // rooted start: kRootedAgents agents at `home` run the group stand-in
  NodeId home = 0;
};

inline constexpr int kRootedAgents = 9;

/// Checks applied to rooted-start runs; `survivor` here means no team leader died.
std::vector<Check> rooted_checks();

/// `count` distinct ids in [1, max(n^2, count)] all at `home`, deterministic per seed.
std::vector<Placement> rooted_placement(const Footprint& fp, NodeId home, int count, std::uint64_t seed);

struct DynamicCase {
  DynamicJob job;
  RunResult result;
  AuditReport report;
};

std::string label(const DynamicJob& job);

/// Runs one job and audits it: the scattered algorithm with 2*deg(bh)+17
/// agents, or the rooted stand-in from a rooted start.
DynamicCase run_dynamic(const DynamicJob& job, const std::vector<Check>& checks);

/// Runs all jobs on a worker pool; results are in job order.
std::vector<DynamicCase> run_dynamic_all(const std::vector<DynamicJob>& jobs, const std::vector<Check>& checks,
                                         int threads = 0);

/// Corpus jobs: every corpus graph, every black-hole node, the adversary set,
/// placement seeds 1..seeds.
std::vector<DynamicJob> corpus_jobs(int seeds);

/// Rooted jobs: every corpus graph, every black-hole node, every safe home,
/// the adversary set, one placement seed.
std::vector<DynamicJob> rooted_jobs();

struct ExhaustiveStats {
  long nodes = 0;        // world states expanded
  long leaves = 0;       // terminal states reached
  long memo_hits = 0;
  long horizon_leaves = 0;
  long stall_cycles = 0;  // adversary can repeat a world state forever
  bool incomplete = false;
};

struct ExhaustiveJob {
  CorpusGraph graph;
  NodeId black_hole = 0;
  std::vector<Placement> placement;
  long horizon = 0;
  long node_budget = 2'000'000;
  bool reduce = true;  // branch only over edges some agent tries to cross
  bool memo = true;
};

/// Walks the full adversary decision tree. Every leaf must be solved with
/// deaths <= 2*deg(bh); a horizon leaf or stall cycle is a failure.
AuditReport oracle_exhaustive(const ExhaustiveJob& job, ExhaustiveStats* stats = nullptr);

// ---------------------------------------------------------- EBHS oracle

struct EbhsJob {
  CorpusGraph graph;
  NodeId home = 0;
  BackendKind backend = BackendKind::dfs;
  int periods = 2;  // emergence ticks enumerated up to periods * (ticks of one period)
};

struct EbhsStats {
  long runs = 0;
  long max_latency = 0;  // ticks from emergence to the first declaration
  long latency_bound = 0;
};

/// Every (node, tick) emergence up to the job's limit plus a no-emergence
/// control over three periods. Checks survivors, declaration correctness and,
/// for the dfs backend, latency <= 7 * period ticks (period = 4m + 4).
AuditReport oracle_ebhs(const EbhsJob& job, EbhsStats* stats = nullptr);

// ---------------------------------------------------------------- suites

struct SuiteOptions {
  int seeds = 3;                 // placement seeds of the corpus sweep
  int threads = 0;               // 0: hardware concurrency
  bool exhaustive = true;        // include the small-graph adversary trees
  int exhaustive_seeds = 3;
  long exhaustive_horizon = 400;
  long exhaustive_budget = 4'000'000;  // expanded states per tree
  int ebhs_periods = 2;
};

/// Corpus sweep of the scattered algorithm under the adversary set, audited
/// with all_checks(); plus, when enabled, exhaustive trees on small_graphs(4).
AuditReport verify_scattered(const SuiteOptions& opt);
AuditReport verify_exhaustive(const SuiteOptions& opt);
AuditReport verify_rooted(const SuiteOptions& opt);
/// Every corpus graph from home 0 with the dfs backend.
AuditReport verify_ebhs(const SuiteOptions& opt);

/// scattered | exhaustive | rooted | ebhs | all. Throws std::invalid_argument
/// on an unknown name.
AuditReport verify_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace bhs::harness
