#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bhs/graph.hpp"

namespace bhs {

/// Exit port of a UXS step: (entry + symbol) mod degree.
Port uxs_step(Port entry, long symbol, int degree);

/// First `count` size guesses: 2, 4, 8, ...
std::vector<long> guess_schedule(int count);

/// Largest graph size for which find_uxs can build a sequence.
inline constexpr int kUxsMaxNodes = 8;

/// Searches (or loads from $BHS_LAB_CACHE) an integer sequence that explores
/// every graph of the test family with at most n_max nodes, from every start
/// node and every entry port. The family is exhaustive up to 4 nodes and
/// sampled above. Throws std::runtime_error when n_max > kUxsMaxNodes or the
/// search budget runs out.
std::vector<int> find_uxs(int n_max);

/// True when walking `seq` from `start` with the given entry port visits every node.
bool uxs_covers(const std::vector<int>& seq, const Footprint& fp, NodeId start, Port entry);

enum class BackendKind { dfs, uxs, uxs_known_n };
BackendKind backend_from_string(const std::string& s);
const char* to_string(BackendKind k);

/// A perpetual single-agent walk. `next` is called at the walker's node with
/// the port it entered by (kNoPort before the first move) and returns the
/// exit port. Backends may keep per-node storage internally.
class Explorer {
 public:
  virtual ~Explorer() = default;
  virtual Port next(NodeId at, Port entry) = 0;
  /// Upper bound on the number of moves between two visits of any node.
  virtual long period() const = 0;
  virtual std::unique_ptr<Explorer> clone() const = 0;
};

/// Whiteboard DFS: each node stores (pass epoch, parent port, last explored
/// port). Non-tree edges are crossed and immediately re-crossed. When the
/// traversal is back at the start with nothing left, a new pass begins.
class DfsExplorer : public Explorer {
 public:
  explicit DfsExplorer(const Footprint& fp);
  Port next(NodeId at, Port entry) override;
  long period() const override { return 4 * static_cast<long>(m_) + 4; }
  std::unique_ptr<Explorer> clone() const override { return std::make_unique<DfsExplorer>(*this); }

 private:
  struct Slot {
    long epoch = -1;
    Port parent = kNoPort;
    Port recent = kNoPort;
  };
  std::vector<int> degree_;
  std::vector<Slot> slots_;
  std::size_t m_;
  long epoch_ = 0;
  bool last_explore_ = false;
  Port first_after(const Slot& s, int degree) const;
};

/// Sequence-driven walk; cycles through the given passes forever.
class UxsExplorer : public Explorer {
 public:
  UxsExplorer(const Footprint& fp, std::vector<std::vector<int>> passes);
  Port next(NodeId at, Port entry) override;
  long period() const override;
  std::unique_ptr<Explorer> clone() const override { return std::make_unique<UxsExplorer>(*this); }

 private:
  std::vector<int> degree_;
  std::vector<std::vector<int>> passes_;
  std::size_t pass_ = 0;
  std::size_t pos_ = 0;
};

/// dfs: DfsExplorer. uxs: passes for guesses 2, 4, 8 repeated.
/// uxs_known_n: the sequence for n repeated. Throws for uxs modes when n is
/// beyond kUxsMaxNodes.
std::unique_ptr<Explorer> make_explorer(BackendKind kind, const Footprint& fp);

/// Node sequence of a single agent driven by `ex` from `home` for `moves` moves.
std::vector<NodeId> single_walk(Explorer& ex, const Footprint& fp, NodeId home, long moves);

}  // namespace bhs
