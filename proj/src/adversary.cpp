#include "bhs/adversary.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace bhs {

AdversaryDecision decide(Strategy& strategy, const AdversaryView& view) {
  AdversaryDecision d;
  d.missing = strategy.choose(view);
  if (d.missing && !validate_snapshot(*view.footprint, d.missing)) {
    d.diagnostic = "round " + std::to_string(view.round) + ": strategy " + strategy.name() +
                   " chose " + to_string(*d.missing) + " which would disconnect the graph; coerced to none";
    d.missing.reset();
  }
  return d;
}

std::vector<AdversaryDecision> enumerate_decisions(const Footprint& fp) {
  std::vector<AdversaryDecision> out{AdversaryDecision{}};
  auto bridges = fp.bridges();
  for (const auto& e : fp.edges()) {
    if (!std::binary_search(bridges.begin(), bridges.end(), e)) out.push_back({e, {}});
  }
  return out;
}

std::optional<EdgeId> ScriptedStrategy::choose(const AdversaryView& view) {
  auto it = script_.find(view.round);
  if (it == script_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> RandomStrategy::choose(const AdversaryView& view) {
  if (legal_.empty()) legal_ = enumerate_decisions(*view.footprint);
  return legal_[rng_() % legal_.size()].missing;
}

std::string RandomStrategy::state_key() const {
  std::ostringstream s;
  s << rng_;
  return s.str();
}

std::optional<EdgeId> BlockSmallestStrategy::choose(const AdversaryView& view) {
  if (!init_) {
    bridges_ = view.footprint->bridges();
    init_ = true;
  }
  const PlannedMove* best = nullptr;
  for (const auto& mv : view.planned) {
    bool scattered = false;
    for (const auto& ag : *view.agents) {
      if (ag.id == mv.agent) {
        scattered = !ag.grp && ag.mode != Mode::terminated;
        break;
      }
    }
    if (!scattered) continue;
    if (std::binary_search(bridges_.begin(), bridges_.end(), mv.edge)) continue;
    if (!best || mv.agent < best->agent) best = &mv;
  }
  if (!best) return std::nullopt;
  return best->edge;
}

std::map<long, EdgeId> read_script(std::istream& in) {
  std::map<long, EdgeId> out;
  long r;
  NodeId u, v;
  while (in >> r >> u >> v) out[r] = EdgeId::of(u, v);
  if (!in.eof()) throw std::runtime_error("malformed adversary script");
  return out;
}

std::unique_ptr<Strategy> make_strategy(const std::string& spec) {
  if (spec == "none") return std::make_unique<NoneStrategy>();
  if (spec == "block-smallest") return std::make_unique<BlockSmallestStrategy>();
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (colon != std::string::npos && !arg.empty()) {
    if (kind == "random") return std::make_unique<RandomStrategy>(std::stoull(arg));
    if (kind == "script") {
      std::ifstream in(arg);
      if (!in) throw std::runtime_error("cannot open adversary script " + arg);
      return std::make_unique<ScriptedStrategy>(read_script(in));
    }
    if (kind == "persistent") {
      auto comma = arg.find(',');
      if (comma == std::string::npos) throw std::runtime_error("persistent needs U,V");
      return std::make_unique<PersistentStrategy>(
          EdgeId::of(std::stoi(arg.substr(0, comma)), std::stoi(arg.substr(comma + 1))));
    }
  }
  throw std::runtime_error("unknown adversary spec '" + spec + "'");
}

}  // namespace bhs
