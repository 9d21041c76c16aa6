#include "bhs/trace_io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace bhs {

using nlohmann::ordered_json;

namespace {

ordered_json to_json(const TraceEvent& e) {
  ordered_json j;
  j["schema"] = kTraceSchema;
  j["round"] = e.round;
  if (e.sub_round)
    j["sub_round"] = *e.sub_round;
  else
    j["sub_round"] = nullptr;
  j["agent"] = e.agent;
  j["kind"] = to_string(e.kind);
  j["at"] = e.at;
  j["detail"] = e.detail;
  return j;
}

}  // namespace

std::string trace_event_json(const TraceEvent& e) { return to_json(e).dump(); }

void write_trace_jsonl(std::ostream& out, const Trace& trace) {
  for (const auto& e : trace) out << to_json(e).dump() << '\n';
}

Trace read_trace_jsonl(std::istream& in) {
  Trace t;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto j = ordered_json::parse(line);
      if (j.at("schema").get<int>() != kTraceSchema) throw std::runtime_error("unsupported schema");
      TraceEvent e;
      e.round = j.at("round").get<long>();
      if (!j.at("sub_round").is_null()) e.sub_round = j.at("sub_round").get<int>();
      e.agent = j.at("agent").get<AgentId>();
      auto kind = event_kind_from_string(j.at("kind").get<std::string>());
      if (!kind) throw std::runtime_error("unknown event kind");
      e.kind = *kind;
      e.at = j.at("at").get<NodeId>();
      e.detail = j.at("detail").get<std::string>();
      t.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw std::runtime_error("trace line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return t;
}

std::string outcome_json(const SimOutcome& o, const std::string& extra) {
  ordered_json j;
  j["schema"] = kTraceSchema;
  j["verdict"] = to_string(o.verdict);
  j["rounds_elapsed"] = o.rounds_elapsed;
  j["blocked_rounds"] = o.blocked_rounds;
  j["group_formed"] = o.group_formed;
  auto det = ordered_json::array();
  for (const auto& d : o.detected) {
    ordered_json x;
    x["declarer"] = d.declarer;
    x["node"] = d.node;
    x["port"] = d.port;
    x["round"] = d.round;
    if (d.sub_round)
      x["sub_round"] = *d.sub_round;
    else
      x["sub_round"] = nullptr;
    det.push_back(x);
  }
  j["detected"] = det;
  j["dead"] = o.dead;
  j["deaths"] = o.dead.size();
  if (!o.violation.empty()) j["violation"] = o.violation;
  auto ex = ordered_json::parse(extra);
  if (ex.is_object())
    for (auto& [k, v] : ex.items()) j[k] = v;
  return j.dump();
}

}  // namespace bhs
