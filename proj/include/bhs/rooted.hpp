#pragma once

#include <vector>

#include "bhs/world.hpp"

namespace bhs::rooted {

/// Team layout inside a group: rank 3k leads team k, ranks 3k+1 and 3k+2 are
/// its first and second helper. Ranks past the last full team retire.
inline constexpr int kTeamSize = 3;
inline constexpr int kLeader = 0;
inline constexpr int kHelper1 = 1;
inline constexpr int kHelper2 = 2;

inline int team_of(const AgentState& a) { return a.role / kTeamSize; }
inline int slot_of(const AgentState& a) { return a.role % kTeamSize; }

/// Turns a settled agent into a member of the group made of `members`
/// (ascending ids, all co-located). The smallest id is the group id.
Action form_group(const AgentState& self, const std::vector<AgentId>& members);

/// Compute for a group member. Members at their team leader's node replay the
/// leader's decision; a helper away from it runs its own short script.
///
/// Each team walks the footprint on a per-node rotor (the group's travel
/// entry holds the last port handed out) and crosses every edge with the
/// three-agent cautious walk. Teams at the same node never take the same port.
/// A blocked micro-move is retried; the other teams keep moving meanwhile.
Action compute(const AgentState& self, const LocalView& view);

/// Standalone entry for a rooted start: every agent at the node joins one
/// group in round 0, then runs `compute`.
Action standalone(const AgentState& self, const LocalView& view);

/// True when some team leader is among `dead`.
bool leader_lost(const std::vector<AgentId>& dead, const std::vector<AgentId>& ids);

}  // namespace bhs::rooted
