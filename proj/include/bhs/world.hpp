#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bhs/graph.hpp"

namespace bhs {

using AgentId = int;
inline constexpr AgentId kNoAgent = 0;  // ids are >= 1

enum class DfsState : std::uint8_t { explore, backtrack };

// Progress of an Individual Cautious Movement.
//   idle      : ICM complete (or never started); the agent is "settled".
//   probing   : mark written at origin, first crossing attempted this round.
//   at_far    : reached the far node; walking back to the origin.
//   deleting  : back at origin; next even round erases the mark and moves.
//   final_move: mark erased, crossing for the last time.
enum class IcmPhase : std::uint8_t { idle, probing, at_far, deleting, final_move };

enum class Mode : std::uint8_t { own_dfs, follower, group_member, terminated };

// Team phases of the rooted stand-in, replicated in every team member.
enum class GroupPhase : std::uint8_t { select, probe, confirm, move };

// Helper sub-states of the two cautious-walk helpers.
enum class HelperPhase : std::uint8_t { home, out, back, parked };

/// Fixed-size per-agent memory. Every field is a scalar: ids, ports, flags.
struct AgentState {
  AgentId id = kNoAgent;
  DfsState state = DfsState::explore;
  bool success = true;
  Port pout = kNoPort;
  Port pin = kNoPort;
  bool grp = false;
  AgentId grp_id = kNoAgent;
  NodeId position = 0;
  bool alive = true;
  IcmPhase icm_phase = IcmPhase::idle;
  Mode mode = Mode::own_dfs;

  // Scattered-algorithm bookkeeping.
  AgentId follow_id = kNoAgent;  // leader when mode == follower
  bool icm_own = false;          // current ICM is a step of the agent's own DFS
  Port retry_port = kNoPort;     // own-DFS ICM that was blocked and must be retried
  std::uint32_t epoch = 0;       // incarnation of the agent's own DFS
  bool moved_direct = false;     // last move was a non-ICM move (backtrack/bounce)

  // Group bookkeeping (valid when grp). The group is split into teams of
  // three by rank: rank 3k leads team k, 3k+1 and 3k+2 are its helpers.
  int role = 0;  // rank inside the group at formation
  GroupPhase gphase = GroupPhase::select;
  Port gport = kNoPort;                // port under test / being crossed
  AgentId gwatch = kNoAgent;           // absent owner of a mark on gport when the probe started
  HelperPhase hphase = HelperPhase::home;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct TravelEntry {
  AgentId owner = kNoAgent;
  Port parent = kNoPort;
  Port recent = kNoPort;
  std::uint32_t epoch = 0;  // owner's DFS incarnation
  bool group = false;       // group rotor entry: `recent` is the last port handed out

  friend bool operator==(const TravelEntry&, const TravelEntry&) = default;
};

struct MarkEntry {
  Port port = kNoPort;
  AgentId owner = kNoAgent;

  friend bool operator==(const MarkEntry&, const MarkEntry&) = default;
};

struct Whiteboard {
  std::optional<TravelEntry> travel;
  std::optional<MarkEntry> marked1;
  std::optional<MarkEntry> marked2;
  bool grp = false;
  AgentId grp_id = kNoAgent;

  int mark_count() const { return (marked1 ? 1 : 0) + (marked2 ? 1 : 0); }
  bool has_free_mark_slot() const { return !marked1 || !marked2; }

  friend bool operator==(const Whiteboard&, const Whiteboard&) = default;
};

/// A requested whiteboard mutation at the agent's current node.
struct WbOp {
  enum class Kind : std::uint8_t { set_travel, write_mark, erase_mark, stamp_group };
  Kind kind = Kind::set_travel;
  TravelEntry travel{};
  MarkEntry mark{};      // write_mark: (port, owner); erase_mark: owner identifies the entry
  AgentId grp_id = kNoAgent;

  static WbOp set(TravelEntry t) { return {Kind::set_travel, t, {}, kNoAgent}; }
  static WbOp write(Port p, AgentId owner) { return {Kind::write_mark, {}, {p, owner}, kNoAgent}; }
  static WbOp erase(AgentId owner) { return {Kind::erase_mark, {}, {kNoPort, owner}, kNoAgent}; }
  static WbOp stamp(AgentId g) { return {Kind::stamp_group, {}, {}, g}; }
};

enum class EventKind : std::uint8_t {
  move_ok,
  move_blocked,
  died,
  wrote_wb,
  erased_wb,
  declared_bh,
  terminated,
  group_formed,
  followed,
};

const char* to_string(EventKind k);
std::optional<EventKind> event_kind_from_string(const std::string& s);

struct TraceEvent {
  long round = 0;
  std::optional<int> sub_round;
  AgentId agent = kNoAgent;
  EventKind kind = EventKind::move_ok;
  NodeId at = 0;
  std::string detail;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using Trace = std::vector<TraceEvent>;

/// What one agent sees during Look.
struct LocalView {
  long round = 0;
  int degree = 0;
  Whiteboard wb;
  std::vector<AgentState> others;  // alive co-located agents, ascending id

  bool present(AgentId id) const;
  const AgentState* find(AgentId id) const;
};

/// Output of Compute for one agent.
struct Action {
  AgentState next;                 // updated private state (position/alive/pin ignored)
  std::optional<Port> move;        // attempted move this round
  std::vector<WbOp> wb;
  std::optional<Port> declare;     // port at current node believed to lead to the black hole
  std::vector<std::pair<EventKind, std::string>> notes;  // extra trace events
};

struct Declaration {
  AgentId declarer = kNoAgent;
  NodeId node = 0;
  Port port = kNoPort;
  long round = 0;
  std::optional<int> sub_round;

  friend bool operator==(const Declaration&, const Declaration&) = default;
};

enum class Verdict : std::uint8_t { solved, unsolved_horizon, violation };
const char* to_string(Verdict v);

struct SimOutcome {
  std::vector<Declaration> detected;
  std::vector<AgentId> dead;
  long rounds_elapsed = 0;
  long blocked_rounds = 0;  // rounds in which at least one move was blocked
  Verdict verdict = Verdict::unsolved_horizon;
  std::string violation;
  bool group_formed = false;
};

}  // namespace bhs
