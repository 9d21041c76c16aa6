#pragma once

#include <optional>
#include <vector>

#include "bhs/world.hpp"

namespace bhs::scattered {

/// Minimum number of settled agents that switch to the rooted algorithm.
inline constexpr int kGroupSize = 9;

/// Full Compute for the scattered algorithm; group members are delegated to
/// the rooted subroutine.
Action compute(const AgentState& self, const LocalView& view);

/// Even-round decision of a non-group agent.
Action compute_even(const AgentState& self, const LocalView& view);
/// Odd-round bookkeeping: success bits and erasure of marks of failed probes.
Action compute_odd(const AgentState& self, const LocalView& view);

/// True when the agent has finished its ICM and takes part in arbitration.
bool settled(const AgentState& a);

/// Port proven to lead to the black hole: both mark slots name the same port
/// and neither owner is at the node. `self` is the viewer, which is never
/// part of view.others.
std::optional<Port> detect(const LocalView& view, AgentId self = kNoAgent);

/// Starts an ICM through `port`: mark at the current node, then cross.
Action icm_start(const AgentState& self, Port port, bool own_dfs);

/// Drives an ICM already in progress (phase != idle) for either parity.
Action icm_advance(const AgentState& self, const LocalView& view);

/// Outcome of one step of the agent's own whiteboard DFS.
struct DfsStep {
  enum class Kind { explore, backtrack, bounce, finished };
  Kind kind = Kind::finished;
  Port port = kNoPort;
  std::optional<TravelEntry> write;  // travel entry to store at the node
};

/// Next move of the agent's own DFS at its current node (ascending ports).
DfsStep dfs_next(const AgentState& self, const LocalView& view);

}  // namespace bhs::scattered
