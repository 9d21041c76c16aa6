#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bhs/adversary.hpp"
#include "bhs/graph.hpp"
#include "bhs/world.hpp"

namespace bhs {

/// Compute phase of an algorithm: a pure function of the agent's own memory
/// and its Look view.
using ComputeFn = std::function<Action(const AgentState&, const LocalView&)>;

struct Placement {
  NodeId node = 0;
  AgentId id = kNoAgent;
  bool operator==(const Placement&) const = default;
};

/// One round's Compute results, before the adversary picks the snapshot.
struct RoundPlan {
  long round = 0;
  std::vector<Action> actions;  // parallel to World::agents()
  std::vector<PlannedMove> moves;
};

/// Synchronous round engine for the dynamic (1-bounded) model with a black
/// hole present from round 0.
class World {
 public:
  World(std::shared_ptr<const Footprint> fp, NodeId black_hole, const std::vector<Placement>& placement,
        ComputeFn algorithm, bool record_trace = true);

  const Footprint& footprint() const { return *fp_; }
  NodeId black_hole() const { return black_hole_; }
  long round() const { return round_; }
  const std::vector<AgentState>& agents() const { return agents_; }
  const std::vector<Whiteboard>& whiteboards() const { return wbs_; }
  const Trace& trace() const { return trace_; }
  const SimOutcome& outcome() const { return outcome_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  /// Look + Compute for every alive agent.
  RoundPlan plan() const;
  /// Move phase under the given snapshot, whiteboard commits, deaths, trace.
  void commit(const RoundPlan& plan, const AdversaryDecision& decision);
  /// plan + decide + commit.
  void step(Strategy& adversary);

  /// True once someone declared, a violation occurred, or nobody can act.
  bool finished() const { return finished_; }
  /// Marks the run as out of time and computes the final verdict.
  void finalize_horizon();

  /// Canonical encoding of everything that influences future rounds except
  /// the round number itself (parity is included).
  std::string state_key() const;

  LocalView view_of(const AgentState& a) const;

 private:
  std::shared_ptr<const Footprint> fp_;
  NodeId black_hole_;
  ComputeFn algorithm_;
  bool record_;
  long round_ = 0;
  std::vector<AgentState> agents_;
  std::vector<Whiteboard> wbs_;
  Trace trace_;
  SimOutcome outcome_;
  std::vector<std::string> diagnostics_;
  bool finished_ = false;

  void emit(std::optional<int> sub, AgentId a, EventKind k, NodeId at, std::string detail);
  void fail(const std::string& why);
  void settle_verdict();
};

/// Applies the requested mutations of one node for one round. Returns a
/// violation message when the requests break the whiteboard discipline: more
/// than one travel write, more than one mark write, a mark write with no free
/// slot, or an erase of an entry that is not there.
std::optional<std::string> resolve_wb_writes(Whiteboard& wb, const std::vector<std::pair<AgentId, WbOp>>& requests);

struct RunConfig {
  std::shared_ptr<const Footprint> footprint;
  NodeId black_hole = 0;
  std::vector<Placement> placement;
  long horizon = 0;  // 0 selects default_horizon()
  bool record_trace = true;
};

struct RunResult {
  SimOutcome outcome;
  Trace trace;
  std::vector<std::string> diagnostics;
};

/// 4 * 152 * m * deg(bh) + 64 * m^2 rounds.
long default_horizon(const Footprint& fp, NodeId black_hole);

RunResult run(const RunConfig& cfg, const ComputeFn& algorithm, Strategy& adversary);

/// 2*deg(bh)+17 distinct ids in [1, n^2] placed on safe nodes, deterministic per seed.
std::vector<Placement> scatter_agents(const Footprint& fp, NodeId black_hole, int count, std::uint64_t seed);

}  // namespace bhs
