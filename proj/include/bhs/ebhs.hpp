#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bhs/exploration.hpp"
#include "bhs/graph.hpp"
#include "bhs/world.hpp"

namespace bhs {

/// The black hole appears at `node` at the start of the first tick whose
/// (round, sub_round) is >= (round, sub_round) here. Round 0 has a single
/// tick with sub_round 1.
struct Emergence {
  NodeId node = 0;
  long round = 0;
  int sub_round = 1;
};

/// Chain configuration between rounds: a1,a2 at v1, a3,a4 at v2.
struct ChainState {
  NodeId v1 = 0, v2 = 0;
  Port p1 = kNoPort;  // at v1, towards v2
  Port p2 = kNoPort;  // at v2, towards v1
  long round = 0;
};

enum class ChainMove { forward, backward };

/// Backward iff the next port equals the port back to v1.
inline ChainMove classify(Port p3, Port p2) { return p3 == p2 ? ChainMove::backward : ChainMove::forward; }

/// Number of sub-rounds the chain needs for one move.
inline int sub_rounds(ChainMove m) { return m == ChainMove::backward ? 4 : 7; }

struct EbhsConfig {
  std::shared_ptr<const Footprint> footprint;
  NodeId home = 0;
  std::optional<Emergence> emergence;
  BackendKind backend = BackendKind::dfs;
  long horizon_ticks = 0;  // 0 selects a default derived from the backend period
  bool record_trace = true;
};

struct EbhsResult {
  SimOutcome outcome;          // rounds_elapsed counts ticks
  Trace trace;
  std::vector<std::string> diagnostics;
  long ticks = 0;
  std::optional<long> emergence_tick;    // tick at which the black hole appeared
  std::optional<long> declaration_tick;  // first tick with a declaration
  long period = 0;                       // backend period in moves
  std::vector<NodeId> lead_positions;    // v2 at every round boundary, starting with home
  std::vector<std::pair<long, int>> tick_labels;  // (round, sub_round) of every tick
};

/// Throws std::invalid_argument for a configuration the problem excludes:
/// n = 1, a home of degree 0, emergence at the home in round 0, or a node out
/// of range.
void validate_ebhs(const EbhsConfig& cfg);

/// Runs the four-agent cautious chain over the chosen exploration backend
/// until the first tick containing a declaration, all agents dead, or the
/// horizon.
EbhsResult run_ebhs(const EbhsConfig& cfg);

/// Same, with a caller-provided backend (cloned).
EbhsResult run_ebhs(const EbhsConfig& cfg, const Explorer& backend);

/// Default horizon: emergence tick + 10 periods of 7 ticks, or 3 periods
/// without emergence.
long default_ebhs_horizon(long period, const std::optional<Emergence>& e);

}  // namespace bhs
