#ifndef DYNFAIR_AUDIT_HPP
#define DYNFAIR_AUDIT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynfair/rational.hpp"
#include "dynfair/trace.hpp"

namespace dynfair {

/// Ratio that may be unbounded (positive value against a zero-value holding).
struct ExtRat {
  bool unbounded = false;
  Rat value{0};

  static ExtRat inf() { return {true, Rat(0)}; }
  static ExtRat of(Rat v) { return {false, std::move(v)}; }

  bool operator<(const ExtRat& o) const {
    if (unbounded || o.unbounded) return !unbounded && o.unbounded;
    return value < o.value;
  }
  std::string str() const;
  double to_double() const;  // +inf when unbounded
};

/// Fairness factors after one trace event. Proportionality is reported with
/// both denominators (live players and arrivals so far); they agree on
/// arrival-only traces.
struct StepMetrics {
  long step = 0;
  long arrivals = 0;
  long live = 0;
  std::optional<ExtRat> sigma_live;
  std::optional<ExtRat> sigma_arrivals;
  std::optional<ExtRat> xi;
  std::optional<ExtRat> eta;
  std::string bound;  // decimal rendering of the applicable bound, arrivals only
  bool pass = true;   // no bound violation or undecided comparison at this step
};

struct BoundViolation {
  long step = 0;
  std::string bound;
  std::string lhs;
  std::string rhs;
};

struct StructuralViolation {
  long step = 0;
  std::string what;
};

struct AuditReport {
  std::string algorithm;
  long n_max = 0;
  std::vector<StepMetrics> per_step;
  std::optional<ExtRat> sigma_live_max;
  std::optional<ExtRat> sigma_arrivals_max;
  std::optional<ExtRat> xi_max;
  std::optional<ExtRat> eta_max;
  bool recallable_ok = true;    // at most one prior player shrank per arrival
  bool conservation_ok = true;  // every grant drawn from recalled + unallocated
  // Informational: the interval algorithms grant whole partition pieces, which
  // may include regions the receiver values at zero. Not part of pass().
  bool non_wasteful_ok = true;
  std::vector<StructuralViolation> structural_violations;
  std::vector<BoundViolation> bound_violations;
  std::vector<StructuralViolation> inconclusive;

  bool pass() const {
    return recallable_ok && conservation_ok && bound_violations.empty() &&
           inconclusive.empty();
  }
};

/// Replays a trace, recomputing every per-step fairness factor exactly,
/// checking the structural invariants, and comparing each factor against the
/// bound of the algorithm named in the trace header. Rational bounds are
/// compared exactly; bounds with ln terms via certified enclosures, with
/// undecidable comparisons reported as inconclusive. Deterministic.
AuditReport audit_trace(const Trace& trace);

struct CheckResult {
  bool ok = true;
  long step = 0;
  std::string what;
};

/// At most tau prior players change per arrival, each by shrinking.
CheckResult check_recallable(const Trace& trace, long tau);

/// Every granted set avoids the zero-density region of its owner's valuation.
/// Allocations only shrink afterwards, so checking grants covers every step.
CheckResult check_non_wasteful(const Trace& trace);

/// Per-step factors at a 1-based event index, from a full audit.
ExtRat proportionality_factor(const Trace& trace, long step);
ExtRat envy_factor(const Trace& trace, long step);
ExtRat ud_fairness_factor(const Trace& trace, long step);

/// Bound violations only (subset of a full audit).
std::vector<BoundViolation> check_bounds(const Trace& trace);

void write_report(std::ostream& out, const AuditReport& report);
std::string report_to_json(const AuditReport& report);

/// CSV projection: step,sigma,xi,eta,bound,pass with decimal renderings.
std::string report_to_csv(const AuditReport& report);

}  // namespace dynfair

#endif  // DYNFAIR_AUDIT_HPP
