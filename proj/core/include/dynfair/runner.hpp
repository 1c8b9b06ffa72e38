#ifndef DYNFAIR_RUNNER_HPP
#define DYNFAIR_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynfair/adversary.hpp"
#include "dynfair/audit.hpp"
#include "dynfair/dfd.hpp"
#include "dynfair/instance.hpp"
#include "dynfair/rational.hpp"
#include "dynfair/trace.hpp"

namespace dynfair {

struct RunConfig {
  std::string algorithm;  // dfd1 | dfd2 | ud_s | ud
  std::optional<Rat> d;   // ud_s minimum demand
  std::optional<Rat> c;   // ud_s demand ratio
  std::optional<Rat> eta; // ud_s budget parameter
  bool adversary_envy = false;         // replace valuations by the adaptive adversary
  std::optional<long> sigma_override;  // dfd1 test hook
};

struct RunResult {
  Trace trace;
  AuditReport report;
  std::optional<HaltCertificate> halt;  // adversary starved player 1
  std::optional<Instance> realized;     // valuations the adversary actually played
};

/// Runs the configured algorithm over the instance and audits the trace.
/// With adversary_envy the instance only supplies the player count; the
/// valuations come from the closed adversary loop and are returned in
/// `realized`. Throws CompatibilityError when the algorithm and the instance
/// valuation kinds do not match.
RunResult run(const RunConfig& config, const Instance& instance);

struct SweepSpec {
  std::string algorithm;
  Family family = Family::uniform;
  std::vector<long> ns;
  long reps = 1;
  std::uint64_t seed = 0;
};

/// One audited run per (n, rep) with a seed derived deterministically from
/// spec.seed; returns CSV rows n,rep,seed,algorithm,family,sigma,xi,eta,pass.
std::string sweep_csv(const SweepSpec& spec);

}  // namespace dynfair

#endif  // DYNFAIR_RUNNER_HPP
