#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "bhs/adversary.hpp"
#include "bhs/harness.hpp"
#include "bhs/rooted.hpp"
#include "bhs/scattered.hpp"

namespace bhs::harness {

std::string label(const DynamicJob& job) {
  std::ostringstream s;
  s << job.graph.name << " bh=" << job.black_hole;
  if (job.rooted) s << " home=" << job.home;
  s << " seed=" << job.placement_seed << " adversary=" << job.adversary;
  return s.str();
}

std::vector<Check> rooted_checks() {
  return {Check::atmost_travel_info, Check::even_moves_24lm, Check::wbmemory, Check::correctness, Check::survivor};
}

std::vector<Placement> rooted_placement(const Footprint& fp, NodeId home, int count, std::uint64_t seed) {
  const int n = fp.node_count();
  const int range = std::max(n * n, count);
  std::vector<AgentId> ids(range);
  std::iota(ids.begin(), ids.end(), 1);
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<Placement> out;
  for (int i = 0; i < count; ++i) out.push_back({home, ids[i]});
  return out;
}

DynamicCase run_dynamic(const DynamicJob& job, const std::vector<Check>& checks) {
  DynamicCase c;
  c.job = job;
  const auto& fp = *job.graph.fp;
  RunConfig cfg;
  cfg.footprint = job.graph.fp;
  cfg.black_hole = job.black_hole;
  cfg.placement = job.rooted ? rooted_placement(fp, job.home, kRootedAgents, job.placement_seed)
                             : scatter_agents(fp, job.black_hole, 2 * fp.degree(job.black_hole) + 17, job.placement_seed);
  cfg.horizon = job.horizon;
  auto adversary = make_strategy(job.adversary);
  c.result = run(cfg, job.rooted ? ComputeFn(rooted::standalone) : ComputeFn(scattered::compute), *adversary);

  AuditContext ctx;
  ctx.footprint = &fp;
  ctx.black_hole = job.black_hole;
  ctx.agent_count = static_cast<int>(cfg.placement.size());
  for (const auto& p : cfg.placement) ctx.ids.push_back(p.id);
  ctx.outcome = &c.result.outcome;
  ctx.label = label(job);
  c.report = audit_trace(c.result.trace, ctx, checks);
  if (job.rooted && c.report.find(Check::survivor) && rooted::leader_lost(c.result.outcome.dead, ctx.ids))
    c.report.fail(Check::survivor, ctx.label + ": a team leader died");
  return c;
}

std::vector<DynamicCase> run_dynamic_all(const std::vector<DynamicJob>& jobs, const std::vector<Check>& checks,
                                         int threads) {
  std::vector<DynamicCase> out(jobs.size());
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      out[i] = run_dynamic(jobs[i], checks);
      out[i].result.trace.clear();  // keep memory flat; rerun the job to get the trace
      out[i].result.trace.shrink_to_fit();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

std::vector<DynamicJob> corpus_jobs(int seeds) {
  std::vector<DynamicJob> jobs;
  for (const auto& g : corpus()) {
    const auto advs = adversary_set(*g.fp);
    for (NodeId bh = 0; bh < g.fp->node_count(); ++bh)
      for (const auto& a : advs)
        for (int s = 1; s <= seeds; ++s) jobs.push_back({g, bh, static_cast<std::uint64_t>(s), a, 0});
  }
  return jobs;
}

std::vector<DynamicJob> rooted_jobs() {
  std::vector<DynamicJob> jobs;
  for (const auto& g : corpus()) {
    const auto advs = adversary_set(*g.fp);
    for (NodeId bh = 0; bh < g.fp->node_count(); ++bh)
      for (NodeId home = 0; home < g.fp->node_count(); ++home) {
        if (home == bh) continue;
        for (const auto& a : advs) {
          DynamicJob j{g, bh, 1, a, 0};
          j.rooted = true;
          j.home = home;
          jobs.push_back(j);
        }
      }
  }
  return jobs;
}

// ------------------------------------------------------------ exhaustive

namespace {

// 128-bit fingerprint of a world-state key; full keys of a few million
// states do not fit in memory at desk scale.
struct Fingerprint {
  std::uint64_t a = 0, b = 0;
  bool operator==(const Fingerprint&) const = default;
};

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const { return static_cast<std::size_t>(f.a ^ (f.b * 0x9e3779b97f4a7c15ULL)); }
};

Fingerprint fingerprint(const std::string& key) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return {h, static_cast<std::uint64_t>(std::hash<std::string>{}(key))};
}

struct Explorer {
  const ExhaustiveJob& job;
  ExhaustiveStats& st;
  AuditReport& rep;
  std::vector<EdgeId> bridges;
  std::unordered_set<Fingerprint, FingerprintHash> done;
  std::unordered_set<Fingerprint, FingerprintHash> path;
  std::vector<std::pair<long, EdgeId>> script;  // decisions taken on the current path
  long delta;

  std::string script_text() const {
    std::ostringstream s;
    for (auto [r, e] : script) s << r << ' ' << e.u << ' ' << e.v << "; ";
    return s.str();
  }

  std::string where(const World& w) const {
    return job.graph.name + " bh=" + std::to_string(job.black_hole) + " round " + std::to_string(w.round()) +
           " script [" + script_text() + "]";
  }

  std::vector<AdversaryDecision> choices(const World& w, const RoundPlan& plan) const {
    if (w.round() % 2 != 0) return {AdversaryDecision{}};
    if (!job.reduce) return enumerate_decisions(w.footprint());
    std::vector<AdversaryDecision> out{AdversaryDecision{}};
    std::set<EdgeId> seen;
    for (const auto& mv : plan.moves) {
      if (std::binary_search(bridges.begin(), bridges.end(), mv.edge)) continue;
      if (seen.insert(mv.edge).second) out.push_back({mv.edge, {}});
    }
    return out;
  }

  void leaf(const World& w) {
    ++st.leaves;
    const auto& o = w.outcome();
    if (o.verdict != Verdict::solved)
      rep.fail(Check::correctness, where(w) + ": " + to_string(o.verdict) + " " + o.violation);
    if (static_cast<long>(o.dead.size()) > 2 * delta)
      rep.fail(Check::deaths, where(w) + ": " + std::to_string(o.dead.size()) + " deaths");
    rep.max_deaths = std::max<long>(rep.max_deaths, static_cast<long>(o.dead.size()));
    rep.max_rounds = std::max(rep.max_rounds, o.rounds_elapsed);
  }

  void visit(World& w) {
    if (st.nodes >= job.node_budget) {
      st.incomplete = true;
      return;
    }
    if (w.finished()) {
      leaf(w);
      return;
    }
    if (w.round() >= job.horizon) {
      ++st.leaves;
      ++st.horizon_leaves;
      rep.fail(Check::correctness, where(w) + ": horizon reached unsolved");
      return;
    }
    Fingerprint key;
    if (job.memo) {
      key = fingerprint(w.state_key());
      if (path.count(key)) {
        ++st.stall_cycles;
        rep.fail(Check::correctness, where(w) + ": adversary can repeat this state forever");
        return;
      }
      if (done.count(key)) {
        ++st.memo_hits;
        return;
      }
      path.insert(key);
    }
    ++st.nodes;
    const RoundPlan plan = w.plan();
    const auto ds = choices(w, plan);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (ds[i].missing) script.push_back({w.round(), *ds[i].missing});
      if (i + 1 == ds.size()) {
        // Reuse the current world for the last branch.
        World c = std::move(w);
        c.commit(plan, ds[i]);
        visit(c);
        w = std::move(c);
      } else {
        World c = w;
        c.commit(plan, ds[i]);
        visit(c);
      }
      if (ds[i].missing) script.pop_back();
      if (st.incomplete) break;
    }
    if (job.memo) {
      path.erase(key);
      if (!st.incomplete) done.insert(key);
    }
  }
};

}  // namespace

AuditReport oracle_exhaustive(const ExhaustiveJob& job, ExhaustiveStats* stats) {
  AuditReport rep = empty_report({Check::correctness, Check::deaths});
  ExhaustiveStats local;
  ExhaustiveStats& st = stats ? *stats : local;
  st = {};
  const auto& fp = *job.graph.fp;
  Explorer ex{job, st, rep, fp.bridges(), {}, {}, {}, fp.degree(job.black_hole)};
  World w(job.graph.fp, job.black_hole, job.placement, scattered::compute, false);
  ex.visit(w);
  rep.runs = st.leaves;
  rep.incomplete = st.incomplete;
  if (st.incomplete) rep.notes.push_back(job.graph.name + ": node budget exhausted");
  return rep;
}

// ------------------------------------------------------------------ EBHS

AuditReport oracle_ebhs(const EbhsJob& job, EbhsStats* stats) {
  AuditReport rep = empty_report(ebhs_checks());
  EbhsStats local;
  EbhsStats& st = stats ? *stats : local;
  st = {};
  const auto& fp = *job.graph.fp;
  auto backend = make_explorer(job.backend, fp);
  const long period = backend->period();
  const bool check_latency = job.backend == BackendKind::dfs;
  st.latency_bound = 7 * period;

  EbhsConfig base;
  base.footprint = job.graph.fp;
  base.home = job.home;
  base.backend = job.backend;
  base.record_trace = false;

  // Control: no emergence over three periods.
  EbhsConfig control = base;
  control.horizon_ticks = 3 * 7 * period;
  const EbhsResult ctl = run_ebhs(control, *backend);
  ++st.runs;
  if (!ctl.outcome.detected.empty())
    rep.fail(Check::control_silent, job.graph.name + " home=" + std::to_string(job.home) + ": declaration without a black hole");

  // Emergence ticks: those of the first `periods` periods of chain rounds.
  const long round_limit = job.periods * period;
  for (NodeId w = 0; w < fp.node_count(); ++w) {
    for (const auto& [r, s] : ctl.tick_labels) {
      if (r > round_limit) break;
      if (w == job.home && r == 0) continue;
      EbhsConfig cfg = base;
      cfg.emergence = Emergence{w, r, s};
      const EbhsResult res = run_ebhs(cfg, *backend);
      ++st.runs;
      ++rep.runs;
      const std::string where = job.graph.name + " home=" + std::to_string(job.home) + " emerge=" + std::to_string(w) +
                                ":" + std::to_string(r) + ":" + std::to_string(s);
      rep.max_deaths = std::max<long>(rep.max_deaths, static_cast<long>(res.outcome.dead.size()));
      rep.max_rounds = std::max(rep.max_rounds, res.ticks);
      if (res.outcome.dead.size() >= 4) rep.fail(Check::survivor, where + ": all agents died");
      if (res.outcome.verdict != Verdict::solved)
        rep.fail(Check::correctness,
                 where + ": " + to_string(res.outcome.verdict) + (res.outcome.violation.empty() ? "" : " " + res.outcome.violation));
      if (res.declaration_tick && res.emergence_tick) {
        const long lat = *res.declaration_tick - *res.emergence_tick;
        st.max_latency = std::max(st.max_latency, lat);
        if (check_latency && lat > st.latency_bound)
          rep.fail(Check::latency, where + ": latency " + std::to_string(lat) + " > " + std::to_string(st.latency_bound));
      }
    }
  }
  rep.runs = st.runs;
  return rep;
}

}  // namespace bhs::harness
