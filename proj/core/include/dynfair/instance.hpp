#ifndef DYNFAIR_INSTANCE_HPP
#define DYNFAIR_INSTANCE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynfair/interval_set.hpp"
#include "dynfair/rational.hpp"
#include "dynfair/valuation.hpp"

namespace dynfair {

/// A valuation as it appears in an instance file. pwu records desugar to pwc
/// at ingestion; demand records drive the UD algorithms.
struct ValuationRecord {
  enum class Kind { pwc, pwu, demand };
  Kind kind = Kind::pwc;
  std::vector<PiecewiseConstantValuation::Segment> segments;  // pwc
  IntervalSet support;                                        // pwu
  Rat d;                                                      // demand

  /// Normalized piecewise-constant view; throws CompatibilityError on demand.
  PiecewiseConstantValuation as_pwc() const;
};

struct ArrivalEvent {
  ValuationRecord valuation;
};

struct DepartureEvent {
  long player = 0;  // 1-based arrival index
};

using InstanceEvent = std::variant<ArrivalEvent, DepartureEvent>;

/// One dynamic fair-division input: a bound on the player count and an
/// ordered event stream.
struct Instance {
  long n_max = 0;
  std::string family;   // generator tag: uniform|pwu|pwc|demand|staged|adaptive
  std::uint64_t seed = 0;
  std::string params;   // free-form generator parameter note
  std::vector<InstanceEvent> events;

  long arrival_count() const;
};

void write_instance(std::ostream& out, const Instance& instance);
Instance read_instance(std::istream& in);  // throws SchemaError

std::string instance_to_string(const Instance& instance);
Instance instance_from_string(const std::string& text);

}  // namespace dynfair

#endif  // DYNFAIR_INSTANCE_HPP
