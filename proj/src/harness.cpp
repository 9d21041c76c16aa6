#include "bhs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "bhs/adversary.hpp"
#include "bhs/scattered.hpp"
#include "json.hpp"

namespace bhs::harness {

const char* to_string(Check c) {
  switch (c) {
    case Check::atmost_travel_info: return "atmost_travel_info";
    case Check::atmost_marked_info: return "atmost_marked_info";
    case Check::min_move: return "min_move";
    case Check::moves_12lm: return "12lm";
    case Check::even_moves_24lm: return "24lm";
    case Check::wbmemory: return "wbmemory";
    case Check::atmost16: return "atmost16";
    case Check::round_bound: return "round_bound_152m";
    case Check::deaths: return "deaths_2delta";
    case Check::correctness: return "correctness";
    case Check::survivor: return "survivor";
    case Check::latency: return "latency";
    case Check::control_silent: return "control_silent";
  }
  return "?";
}

std::vector<Check> all_checks() {
  return {Check::atmost_travel_info, Check::atmost_marked_info, Check::min_move, Check::moves_12lm,
          Check::even_moves_24lm,    Check::wbmemory,           Check::atmost16, Check::round_bound,
          Check::deaths,             Check::correctness};
}

std::vector<Check> ebhs_checks() {
  return {Check::correctness, Check::survivor, Check::latency, Check::control_silent};
}

AuditReport empty_report(const std::vector<Check>& checks) {
  AuditReport r;
  for (Check c : checks) r.checks.push_back({c, true, 0, {}});
  return r;
}

bool AuditReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; }) && !incomplete;
}

CheckResult* AuditReport::find(Check c) {
  for (auto& x : checks)
    if (x.check == c) return &x;
  return nullptr;
}

const CheckResult* AuditReport::find(Check c) const {
  for (const auto& x : checks)
    if (x.check == c) return &x;
  return nullptr;
}

void AuditReport::fail(Check c, const std::string& why) {
  CheckResult* r = find(c);
  if (!r) {
    checks.push_back({c, true, 0, {}});
    r = &checks.back();
  }
  if (r->pass) r->first_failure = why;
  r->pass = false;
  ++r->failures;
}

void AuditReport::merge(const AuditReport& o) {
  for (const auto& c : o.checks) {
    CheckResult* r = find(c.check);
    if (!r) {
      checks.push_back(c);
      continue;
    }
    if (!c.pass) {
      if (r->pass) r->first_failure = c.first_failure;
      r->pass = false;
      r->failures += c.failures;
    }
  }
  runs += o.runs;
  max_deaths = std::max(max_deaths, o.max_deaths);
  max_rounds = std::max(max_rounds, o.max_rounds);
  max_marks = std::max(max_marks, o.max_marks);
  max_travel = std::max(max_travel, o.max_travel);
  incomplete = incomplete || o.incomplete;
  notes.insert(notes.end(), o.notes.begin(), o.notes.end());
}

std::string AuditReport::summary() const {
  std::ostringstream s;
  s << "runs=" << runs << " max_deaths=" << max_deaths << " max_rounds=" << max_rounds << " max_marks=" << max_marks
    << (incomplete ? " INCOMPLETE" : "") << '\n';
  for (const auto& c : checks) {
    s << "  " << (c.pass ? "PASS " : "FAIL ") << to_string(c.check);
    if (!c.pass) s << " (" << c.failures << " failures; first: " << c.first_failure << ")";
    s << '\n';
  }
  for (const auto& n : notes) s << "  note: " << n << '\n';
  return s.str();
}

std::string AuditReport::to_json() const {
  nlohmann::ordered_json j;
  j["ok"] = ok();
  j["runs"] = runs;
  j["incomplete"] = incomplete;
  j["max_deaths"] = max_deaths;
  j["max_rounds"] = max_rounds;
  j["max_marks"] = max_marks;
  j["max_travel"] = max_travel;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json x;
    x["check"] = to_string(c.check);
    x["pass"] = c.pass;
    x["failures"] = c.failures;
    if (!c.pass) x["first_failure"] = c.first_failure;
    arr.push_back(x);
  }
  j["checks"] = arr;
  j["notes"] = notes;
  return j.dump();
}

// ------------------------------------------------------------------ audit

namespace {

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

bool is_move(EventKind k) { return k == EventKind::move_ok || k == EventKind::move_blocked || k == EventKind::died; }

}  // namespace

AuditReport audit_trace(const Trace& trace, const AuditContext& ctx, const std::vector<Check>& checks) {
  AuditReport rep = empty_report(checks);
  rep.runs = 1;
  auto want = [&](Check c) { return rep.find(c) != nullptr; };
  auto where = [&](std::size_t i, const std::string& what) {
    return ctx.label + ": event " + std::to_string(i) + " (round " + std::to_string(trace[i].round) + ", agent " +
           std::to_string(trace[i].agent) + "): " + what;
  };
  const Footprint& fp = *ctx.footprint;
  const long m = fp.edge_count();
  const long delta = fp.degree(ctx.black_hole);
  const long l = ctx.agent_count;
  const AgentId smallest = ctx.ids.empty() ? kNoAgent : *std::min_element(ctx.ids.begin(), ctx.ids.end());

  struct NodeMem {
    bool travel = false;
    int marks = 0;
    bool grp = false;
  };
  std::vector<NodeMem> mem(fp.node_count());
  std::map<std::pair<long, NodeId>, int> travel_writes;
  std::map<AgentId, long> moves;
  std::set<AgentId> grouped;
  std::map<long, int> blocked_per_round;
  std::optional<long> first_group_round;

  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& e = trace[i];
    if (e.kind == EventKind::group_formed) {
      grouped.insert(e.agent);
      if (!first_group_round) first_group_round = e.round;
    }
    if (want(Check::even_moves_24lm) && is_move(e.kind) && e.round % 2 != 0)
      rep.fail(Check::even_moves_24lm, where(i, "movement in an odd round"));
    if (e.kind == EventKind::move_blocked) ++blocked_per_round[e.round];
    if (e.kind == EventKind::move_ok && !grouped.count(e.agent)) {
      const long c = ++moves[e.agent];
      if (want(Check::moves_12lm) && c == 12 * l * m + 1)
        rep.fail(Check::moves_12lm, where(i, "more than 12*l*m successful moves"));
    }
    if (want(Check::min_move) && e.kind == EventKind::followed && e.agent == smallest && !grouped.count(e.agent))
      rep.fail(Check::min_move, where(i, "smallest agent followed another agent"));

    if (e.kind == EventKind::wrote_wb || e.kind == EventKind::erased_wb) {
      if (e.at < 0 || e.at >= fp.node_count()) {
        rep.fail(Check::wbmemory, where(i, "node out of range"));
        continue;
      }
      auto& nm = mem[e.at];
      if (e.kind == EventKind::erased_wb) {
        nm.marks = std::max(0, nm.marks - 1);
      } else if (starts_with(e.detail, "travel")) {
        if (++travel_writes[{e.round, e.at}] == 2 && want(Check::atmost_travel_info))
          rep.fail(Check::atmost_travel_info, where(i, "second travel write at node " + std::to_string(e.at)));
        nm.travel = true;
      } else if (starts_with(e.detail, "mark")) {
        if (nm.marks >= 2 && want(Check::atmost_marked_info))
          rep.fail(Check::atmost_marked_info, where(i, "mark written with both slots taken"));
        ++nm.marks;
      } else if (starts_with(e.detail, "grp")) {
        nm.grp = true;
      }
      rep.max_marks = std::max(rep.max_marks, nm.marks);
      rep.max_travel = std::max(rep.max_travel, nm.travel ? 1 : 0);
      if (want(Check::wbmemory) && nm.marks > 2) rep.fail(Check::wbmemory, where(i, "more than two marks"));
    }
  }

  if (want(Check::atmost16)) {
    for (const auto& [r, count] : blocked_per_round) {
      if (count <= 16) continue;
      if (first_group_round && *first_group_round < r) continue;  // a group already exists
      if (!first_group_round || *first_group_round > r + 2)
        rep.fail(Check::atmost16, ctx.label + ": round " + std::to_string(r) + " blocked " + std::to_string(count) +
                                      " agents and no group formed by the next even round");
    }
  }

  if (ctx.outcome) {
    const auto& o = *ctx.outcome;
    rep.max_deaths = static_cast<long>(o.dead.size());
    rep.max_rounds = o.rounds_elapsed;
    if (want(Check::round_bound) && !o.group_formed && o.rounds_elapsed > 152 * m * delta)
      rep.fail(Check::round_bound, ctx.label + ": " + std::to_string(o.rounds_elapsed) + " rounds > 152*m*delta");
    if (want(Check::deaths) && static_cast<long>(o.dead.size()) > 2 * delta)
      rep.fail(Check::deaths, ctx.label + ": " + std::to_string(o.dead.size()) + " deaths > 2*delta");
    if (want(Check::correctness)) {
      if (o.verdict != Verdict::solved) {
        rep.fail(Check::correctness, ctx.label + ": verdict " + std::string(to_string(o.verdict)) +
                                         (o.violation.empty() ? "" : " (" + o.violation + ")"));
      } else {
        for (const auto& d : o.detected) {
          if (fp.neighbor_via_port(d.node, d.port).neighbor != ctx.black_hole)
            rep.fail(Check::correctness, ctx.label + ": wrong declaration at node " + std::to_string(d.node));
        }
      }
    }
  }
  return rep;
}

}  // namespace bhs::harness
