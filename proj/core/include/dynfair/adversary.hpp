#ifndef DYNFAIR_ADVERSARY_HPP
#define DYNFAIR_ADVERSARY_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dynfair/dfd.hpp"
#include "dynfair/instance.hpp"
#include "dynfair/rational.hpp"

namespace dynfair {

/// Evidence that the adaptive construction became undefined because player 1
/// was starved; any non-empty allocation then exhibits unbounded envy.
struct HaltCertificate {
  long step = 0;
  std::string reason;
};

using AdversaryOutcome = std::variant<PiecewiseConstantValuation, HaltCertificate>;

/// Adaptive envy adversary: the first arrival wants everything, every later
/// arrival wants exactly what player 1 currently holds.
AdversaryOutcome envy_adversary_step(const DfdState& state);

/// The unique xi > 1 with (1 - 1/(1+xi))^(n-2) = 1/xi^2, by bisection on
/// [1, n^2] to relative error 1e-12. Any non-empty allocation on the
/// adversary instance has worst envy at least this value.
double envy_lower_bound(long n);

struct StagedStage {
  long count = 0;
  Rat demand;
};

/// Staged demand instance: stage j brings n/(2 (4 tau)^(j-1)) players of
/// demand (8 tau)^j / n each, with n = (8 tau)^k; the last stage demands 1.
struct StagedUdInstance {
  long n = 0;
  long k = 0;
  long tau = 1;
  std::vector<StagedStage> stages;

  std::vector<Rat> arrival_demands() const;  // flat arrival order
  Instance to_instance() const;
};

StagedUdInstance staged_ud_instance(long k, long tau = 1);

enum class Family { uniform, pwu, pwc, demand };

Family family_from_string(const std::string& name);  // throws ParameterError
std::string family_to_string(Family family);

/// Deterministic-from-seed instance of n arrivals from the given family.
/// Supports and breakpoints land on a rational grid. For the demand family,
/// demands are drawn from [d_min, c*d_min] (defaults to (0, 1]).
Instance random_instance(long n, Family family, std::uint64_t seed,
                         const Rat& d_min = Rat(1, 1000), const Rat& c = Rat(1000));

}  // namespace dynfair

#endif  // DYNFAIR_ADVERSARY_HPP
