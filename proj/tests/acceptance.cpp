// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>

#include "bhs/adversary.hpp"
#include "bhs/ebhs.hpp"
#include "bhs/exploration.hpp"
#include "bhs/harness.hpp"
#include "bhs/rooted.hpp"
#include "bhs/runtime.hpp"
#include "bhs/scattered.hpp"
#include "bhs/trace_io.hpp"

using namespace bhs;
using namespace bhs::harness;

namespace {

// Pinned tolerances and budgets.
constexpr long kAllowedFailures = 0;
constexpr int kPlacementSeeds = 3;
constexpr long kExhaustiveHorizon = 400;
constexpr long kExhaustiveBudget = 4'000'000;  // expanded states per tree
constexpr int kEbhsPeriods = 2;
constexpr int kLatencyFactor = 7;              // sub-rounds per chain move
constexpr int kUxsTriples = 1000;
constexpr int kDeterminismConfigs = 5;
constexpr std::size_t kMaxAgentStateBytes = 128;

int failed = 0;

void line(int id, const char* name, bool pass, const std::string& detail) {
  if (!pass) ++failed;
  std::printf("[%s] %2d %-28s %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string secs(double s) {
  std::ostringstream o;
  o.precision(1);
  o << std::fixed << s << "s";
  return o.str();
}

const CheckResult& check(const AuditReport& r, Check c) { return *r.find(c); }

std::string failures_of(const AuditReport& r, std::initializer_list<Check> cs) {
  std::ostringstream o;
  for (Check c : cs) {
    const auto& x = check(r, c);
    o << to_string(c) << "=" << x.failures << " ";
    if (!x.pass) o << "[first: " << x.first_failure << "] ";
  }
  return o.str();
}

long failures(const AuditReport& r, std::initializer_list<Check> cs) {
  long n = 0;
  for (Check c : cs) n += check(r, c).failures;
  return n;
}

// Criterion 1, exhaustive half: every connected graph on at most four nodes.
struct ExhaustiveSummary {
  AuditReport report = empty_report({Check::correctness, Check::deaths});
  long trees = 0;
  long states = 0;
  std::vector<std::string> incomplete;
};

ExhaustiveSummary exhaustive_small() {
  ExhaustiveSummary s;
  for (const auto& g : small_graphs(4)) {
    for (NodeId bh = 0; bh < g.fp->node_count(); ++bh) {
      for (int seed = 1; seed <= kPlacementSeeds; ++seed) {
        ExhaustiveJob job;
        job.graph = g;
        job.black_hole = bh;
        job.placement = scatter_agents(*g.fp, bh, 2 * g.fp->degree(bh) + 17, static_cast<std::uint64_t>(seed));
        job.horizon = kExhaustiveHorizon;
        job.node_budget = kExhaustiveBudget;
        ExhaustiveStats st;
        s.report.merge(oracle_exhaustive(job, &st));
        ++s.trees;
        s.states += st.nodes;
        if (st.incomplete)
          s.incomplete.push_back(g.name + " bh=" + std::to_string(bh) + " seed=" + std::to_string(seed));
      }
    }
  }
  return s;
}

std::string trace_bytes(const Trace& t) {
  std::ostringstream o;
  write_trace_jsonl(o, t);
  return o.str();
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  // Corpus sweep shared by criteria 1-6.
  auto t0 = std::chrono::steady_clock::now();
  const auto jobs = corpus_jobs(kPlacementSeeds);
  AuditReport corpus_rep = empty_report(all_checks());
  for (const auto& c : run_dynamic_all(jobs, all_checks())) corpus_rep.merge(c.report);
  const double corpus_time = since(t0);

  t0 = std::chrono::steady_clock::now();
  const ExhaustiveSummary ex = exhaustive_small();
  const double ex_time = since(t0);

  {
    const long corpus_fail = failures(corpus_rep, {Check::correctness, Check::deaths});
    const long ex_fail = failures(ex.report, {Check::correctness, Check::deaths});
    std::ostringstream d;
    d << "corpus runs=" << corpus_rep.runs << " failures=" << corpus_fail << " max_deaths=" << corpus_rep.max_deaths
      << " (" << secs(corpus_time) << "); exhaustive trees=" << ex.trees << " states=" << ex.states
      << " failures=" << ex_fail << " incomplete=" << ex.incomplete.size() << " (" << secs(ex_time) << ")";
    for (const auto& n : ex.incomplete) d << " [budget " << kExhaustiveBudget << " exceeded: " << n << "]";
    if (corpus_fail + ex_fail > 0)
      d << " " << failures_of(corpus_rep, {Check::correctness, Check::deaths})
        << failures_of(ex.report, {Check::correctness, Check::deaths});
    line(1, "scattered correctness", corpus_fail + ex_fail <= kAllowedFailures && ex.incomplete.empty(), d.str());
  }

  auto single = [&](int id, const char* name, Check c, const std::string& extra) {
    const auto& r = check(corpus_rep, c);
    line(id, name, r.failures <= kAllowedFailures,
         "runs=" + std::to_string(corpus_rep.runs) + " violations=" + std::to_string(r.failures) + extra +
             (r.pass ? "" : " first: " + r.first_failure));
  };
  single(2, "round bound (no group)", Check::round_bound, " max_rounds=" + std::to_string(corpus_rep.max_rounds));
  single(3, "per-agent moves", Check::moves_12lm, "");

  {
    const long v = failures(corpus_rep, {Check::wbmemory, Check::atmost_travel_info, Check::atmost_marked_info});
    const bool fixed_schema = std::is_trivially_copyable_v<AgentState> && sizeof(AgentState) <= kMaxAgentStateBytes;
    line(4, "whiteboard/agent memory", v <= kAllowedFailures && fixed_schema && corpus_rep.max_marks <= 2 &&
                                           corpus_rep.max_travel <= 1,
         "violations=" + std::to_string(v) + " max_marks=" + std::to_string(corpus_rep.max_marks) +
             " max_travel=" + std::to_string(corpus_rep.max_travel) + " sizeof(AgentState)=" +
             std::to_string(sizeof(AgentState)) + (fixed_schema ? " trivially-copyable" : " NOT fixed"));
  }
  single(5, "smallest-agent non-deviation", Check::min_move, "");
  single(6, "blocking bound", Check::atmost16, "");

  // EBHS: every corpus graph from home 0, dfs backend.
  t0 = std::chrono::steady_clock::now();
  AuditReport ebhs = empty_report(ebhs_checks());
  long max_latency = 0;
  long worst_ratio_num = 0, worst_ratio_den = 1;
  for (const auto& g : corpus()) {
    EbhsStats st;
    ebhs.merge(oracle_ebhs({g, 0, BackendKind::dfs, kEbhsPeriods}, &st));
    max_latency = std::max(max_latency, st.max_latency);
    if (st.max_latency * worst_ratio_den > worst_ratio_num * st.latency_bound) {
      worst_ratio_num = st.max_latency;
      worst_ratio_den = st.latency_bound;
    }
  }
  const double ebhs_time = since(t0);
  {
    const long v = failures(ebhs, {Check::survivor, Check::correctness, Check::control_silent});
    line(7, "EBHS exhaustive correctness", v <= kAllowedFailures,
         "runs=" + std::to_string(ebhs.runs) + " violations=" + std::to_string(v) +
             " max_deaths=" + std::to_string(ebhs.max_deaths) + " (" + secs(ebhs_time) + ") " +
             (v ? failures_of(ebhs, {Check::survivor, Check::correctness, Check::control_silent}) : ""));
  }
  {
    const auto& r = check(ebhs, Check::latency);
    line(8, "EBHS latency", r.failures <= kAllowedFailures,
         "bound=" + std::to_string(kLatencyFactor) + "*(4m+4) violations=" + std::to_string(r.failures) +
             " max_latency=" + std::to_string(max_latency) + " worst=" + std::to_string(worst_ratio_num) + "/" +
             std::to_string(worst_ratio_den) + (r.pass ? "" : " first: " + r.first_failure));
  }

  {
    std::mt19937_64 rng(9);
    int mismatches = 0;
    for (int i = 0; i < kUxsTriples; ++i) {
      const int degree = 1 + static_cast<int>(rng() % 16);
      const Port p = static_cast<Port>(rng() % degree);
      const long beta = static_cast<long>(rng() % 100000);
      // Independent: reduce beta first, then wrap once.
      const long r = beta % degree;
      const long expect = p + r >= degree ? p + r - degree : p + r;
      if (uxs_step(p, beta, degree) != expect) ++mismatches;
    }
    line(9, "UXS step conformance", mismatches == 0,
         std::to_string(kUxsTriples) + " triples, mismatches=" + std::to_string(mismatches));
  }

  {
    struct Cfg {
      const char* graph;
      NodeId bh;
      std::uint64_t seed;
      const char* adversary;
      bool rooted;
    };
    const Cfg cfgs[kDeterminismConfigs] = {{"ring:8", 3, 1, "random:7", false},
                                           {"torus:3x3", 4, 2, "block-smallest", false},
                                           {"random:8,14,3", 7, 3, "random:2", false},
                                           {"complete:4", 2, 1, "persistent:0,1", false},
                                           {"ring:6", 3, 1, "random:11", true}};
    int identical = 0;
    for (const auto& c : cfgs) {
      auto fp = std::make_shared<const Footprint>(generate(c.graph));
      RunConfig rc;
      rc.footprint = fp;
      rc.black_hole = c.bh;
      rc.placement = c.rooted ? rooted_placement(*fp, 0, kRootedAgents, c.seed)
                              : scatter_agents(*fp, c.bh, 2 * fp->degree(c.bh) + 17, c.seed);
      const ComputeFn fn = c.rooted ? ComputeFn(rooted::standalone) : ComputeFn(scattered::compute);
      auto a = make_strategy(c.adversary);
      auto b = make_strategy(c.adversary);
      const auto ra = run(rc, fn, *a);
      const auto rb = run(rc, fn, *b);
      if (!ra.trace.empty() && trace_bytes(ra.trace) == trace_bytes(rb.trace)) ++identical;
    }
    line(10, "determinism", identical == kDeterminismConfigs,
         std::to_string(identical) + "/" + std::to_string(kDeterminismConfigs) + " configs byte-identical");
  }

  std::printf("total %s, %d criteria failed\n", secs(since(start)).c_str(), failed);
  return failed == 0 ? 0 : 1;
}
