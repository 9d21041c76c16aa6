#pragma once

#include <iosfwd>
#include <string>

#include "bhs/world.hpp"

namespace bhs {

inline constexpr int kTraceSchema = 1;

/// One JSON object per line: schema, round, sub_round (null outside EBHS),
/// agent, kind, at, detail.
void write_trace_jsonl(std::ostream& out, const Trace& trace);
std::string trace_event_json(const TraceEvent& e);

/// Inverse of write_trace_jsonl. Throws std::runtime_error on malformed input
/// or an unknown schema.
Trace read_trace_jsonl(std::istream& in);

/// Single JSON object describing the outcome; `extra` is merged in when it
/// holds a JSON object (used for run metadata).
std::string outcome_json(const SimOutcome& o, const std::string& extra = "{}");

}  // namespace bhs
