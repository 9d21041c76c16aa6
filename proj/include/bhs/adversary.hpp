#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bhs/graph.hpp"
#include "bhs/world.hpp"

namespace bhs {

/// A move the round's Compute phase produced; the adversary is omniscient and
/// may inspect these before choosing the snapshot.
struct PlannedMove {
  AgentId agent = kNoAgent;
  NodeId from = 0;
  Port port = kNoPort;
  EdgeId edge{};
};

/// Read-only state handed to strategies, as of the start of the round.
struct AdversaryView {
  long round = 0;
  const Footprint* footprint = nullptr;
  const std::vector<AgentState>* agents = nullptr;
  const std::vector<Whiteboard>* whiteboards = nullptr;
  std::vector<PlannedMove> planned;
};

struct AdversaryDecision {
  std::optional<EdgeId> missing;
  std::string diagnostic;  // non-empty when the strategy output was coerced

  friend bool operator==(const AdversaryDecision& a, const AdversaryDecision& b) {
    return a.missing == b.missing;
  }
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::optional<EdgeId> choose(const AdversaryView& view) = 0;
  virtual std::unique_ptr<Strategy> clone() const = 0;
  virtual std::string name() const = 0;
  /// Internal state relevant for memoisation (empty when stateless).
  virtual std::string state_key() const { return {}; }
};

/// Asks the strategy and coerces illegal output (a bridge or a non-edge) to
/// "no missing edge", recording why.
AdversaryDecision decide(Strategy& strategy, const AdversaryView& view);

/// {none} followed by every non-bridge edge in canonical order.
std::vector<AdversaryDecision> enumerate_decisions(const Footprint& fp);

class NoneStrategy final : public Strategy {
 public:
  std::optional<EdgeId> choose(const AdversaryView&) override { return std::nullopt; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<NoneStrategy>(*this); }
  std::string name() const override { return "none"; }
};

class ScriptedStrategy final : public Strategy {
 public:
  explicit ScriptedStrategy(std::map<long, EdgeId> script) : script_(std::move(script)) {}
  std::optional<EdgeId> choose(const AdversaryView& view) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<ScriptedStrategy>(*this); }
  std::string name() const override { return "script"; }

 private:
  std::map<long, EdgeId> script_;
};

/// Uniform over the legal decisions each round.
class RandomStrategy final : public Strategy {
 public:
  explicit RandomStrategy(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  std::optional<EdgeId> choose(const AdversaryView& view) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<RandomStrategy>(*this); }
  std::string name() const override { return "random:" + std::to_string(seed_); }
  std::string state_key() const override;

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::vector<AdversaryDecision> legal_;
};

/// Removes the non-bridge edge that the smallest-id agent still running the
/// scattered protocol is about to cross. Group members and terminated agents
/// are not targeted.
class BlockSmallestStrategy final : public Strategy {
 public:
  std::optional<EdgeId> choose(const AdversaryView& view) override;
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<BlockSmallestStrategy>(*this); }
  std::string name() const override { return "block-smallest"; }

 private:
  std::vector<EdgeId> bridges_;
  bool init_ = false;
};

class PersistentStrategy final : public Strategy {
 public:
  explicit PersistentStrategy(EdgeId e) : edge_(e) {}
  std::optional<EdgeId> choose(const AdversaryView&) override { return edge_; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<PersistentStrategy>(*this); }
  std::string name() const override { return "persistent:" + std::to_string(edge_.u) + "," + std::to_string(edge_.v); }

 private:
  EdgeId edge_;
};

/// Scripted file format: one "round u v" per line.
std::map<long, EdgeId> read_script(std::istream& in);

/// Parses none | random:SEED | script:PATH | block-smallest | persistent:U,V.
std::unique_ptr<Strategy> make_strategy(const std::string& spec);

}  // namespace bhs
