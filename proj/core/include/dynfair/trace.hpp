#ifndef DYNFAIR_TRACE_HPP
#define DYNFAIR_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynfair/instance.hpp"
#include "dynfair/interval_set.hpp"
#include "dynfair/rational.hpp"

namespace dynfair {

/// Traces record per-event deltas; the full allocation at any step is
/// reconstructible because at most tau prior players change per arrival.

struct DfdRecallDelta {
  long player = 0;
  IntervalSet removed;
};

struct DfdArrival {
  long step = 0;
  long player = 0;
  ValuationRecord valuation;
  IntervalSet granted;
  std::vector<DfdRecallDelta> recalls;  // the algorithms emit at most one
};

struct UdRecallDelta {
  long player = 0;
  Rat new_size;
};

struct UdArrival {
  long step = 0;
  long player = 0;
  Rat demand;
  Rat size;
  std::vector<UdRecallDelta> recalls;
};

struct TraceDeparture {
  long step = 0;
  long player = 0;
};

using TraceEvent = std::variant<DfdArrival, UdArrival, TraceDeparture>;

struct Trace {
  std::string algorithm;  // dfd1 | dfd2 | ud_s | ud
  long n_max = 0;
  std::string params;     // e.g. "d=1/100 c=1 eta=1" for ud_s
  std::vector<TraceEvent> events;

  bool is_ud() const { return algorithm == "ud_s" || algorithm == "ud"; }
};

void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in);  // throws SchemaError

std::string trace_to_string(const Trace& trace);
Trace trace_from_string(const std::string& text);

}  // namespace dynfair

#endif  // DYNFAIR_TRACE_HPP
