#include "dynfair/runner.hpp"

#include <sstream>
#include <variant>

#include "dynfair/errors.hpp"
#include "dynfair/ud.hpp"
#include "dynfair/valuation.hpp"

namespace dynfair {

namespace {

std::vector<DfdRecallDelta> recall_deltas(const RecallRecord& rec) {
  std::vector<DfdRecallDelta> out;
  if (rec.recalled_player && !rec.removed.empty())
    out.push_back({*rec.recalled_player, rec.removed});
  return out;
}

RunResult run_dfd(const RunConfig& config, const Instance& instance) {
  const bool dfd1 = config.algorithm == "dfd1";
  DfdConfig dfd_config{config.sigma_override};
  RunResult out;
  out.trace.algorithm = config.algorithm;
  out.trace.n_max = instance.n_max;

  DfdState state;
  long step = 0;
  for (const auto& event : instance.events) {
    ++step;
    if (const auto* arrival = std::get_if<ArrivalEvent>(&event)) {
      PiecewiseConstantValuation v = arrival->valuation.as_pwc();
      RecallRecord rec = dfd1 ? dfd1_arrival(state, v, dfd_config) : dfd2_arrival(state, v);
      long player = state.step();
      out.trace.events.push_back(DfdArrival{step, player, arrival->valuation,
                                            state.allocation(player),
                                            recall_deltas(rec)});
    } else {
      long player = std::get<DepartureEvent>(event).player;
      state.apply_departure(player);
      out.trace.events.push_back(TraceDeparture{step, player});
    }
  }
  return out;
}

RunResult run_adaptive(const RunConfig& config, const Instance& instance) {
  const bool dfd1 = config.algorithm == "dfd1";
  if (!dfd1 && config.algorithm != "dfd2")
    throw ParameterError("the envy adversary drives interval algorithms only");
  long n = instance.arrival_count();
  if (n == 0) n = instance.n_max;
  if (n < 1) throw ParameterError("adversary run needs a positive player count");

  DfdConfig dfd_config{config.sigma_override};
  RunResult out;
  out.trace.algorithm = config.algorithm;
  out.trace.n_max = n;
  out.realized = Instance{};
  out.realized->n_max = n;
  out.realized->family = "adaptive";
  out.realized->seed = instance.seed;

  DfdState state;
  for (long step = 1; step <= n; ++step) {
    AdversaryOutcome outcome = envy_adversary_step(state);
    if (const auto* halt = std::get_if<HaltCertificate>(&outcome)) {
      out.halt = *halt;
      break;
    }
    PiecewiseConstantValuation v = std::get<PiecewiseConstantValuation>(outcome);
    ValuationRecord record;
    record.kind = ValuationRecord::Kind::pwc;
    record.segments = v.segments();
    RecallRecord rec = dfd1 ? dfd1_arrival(state, v, dfd_config) : dfd2_arrival(state, v);
    long player = state.step();
    out.trace.events.push_back(
        DfdArrival{step, player, record, state.allocation(player), recall_deltas(rec)});
    out.realized->events.push_back(ArrivalEvent{std::move(record)});
  }
  return out;
}

RunResult run_ud(const RunConfig& config, const Instance& instance) {
  const bool uds = config.algorithm == "ud_s";
  RunResult out;
  out.trace.algorithm = config.algorithm;
  out.trace.n_max = instance.n_max;

  std::optional<UdSAllocator> uds_alloc;
  std::optional<UdAllocator> ud_alloc;
  if (uds) {
    if (!config.d || !config.c || !config.eta)
      throw ParameterError("ud_s requires d, c, and eta");
    UdParams params = UdParams::make(*config.d, *config.c, *config.eta);
    out.trace.params = "d=" + format_rat(params.d) + " c=" + format_rat(params.c) +
                       " eta=" + format_rat(params.eta);
    uds_alloc.emplace(std::move(params));
  } else {
    ud_alloc.emplace(instance.n_max);
  }

  UdState state;
  long step = 0;
  for (const auto& event : instance.events) {
    ++step;
    if (const auto* arrival = std::get_if<ArrivalEvent>(&event)) {
      if (arrival->valuation.kind != ValuationRecord::Kind::demand)
        throw CompatibilityError("uniform-demand algorithms need demand valuations");
      const Rat& d = arrival->valuation.d;
      std::optional<UdRecall> recall =
          uds ? uds_alloc->on_arrival(state, d) : ud_alloc->on_arrival(state, d);
      std::vector<UdRecallDelta> recalls;
      if (recall) recalls.push_back({recall->player, recall->new_size});
      out.trace.events.push_back(
          UdArrival{step, state.step, d, state.sizes.back(), std::move(recalls)});
    } else {
      long player = std::get<DepartureEvent>(event).player;
      if (uds) {
        uds_alloc->on_departure(state, player);
      } else {
        ud_alloc->on_departure(state, player);
      }
      out.trace.events.push_back(TraceDeparture{step, player});
    }
  }
  return out;
}

}  // namespace

RunResult run(const RunConfig& config, const Instance& instance) {
  RunResult out;
  if (config.adversary_envy) {
    out = run_adaptive(config, instance);
  } else if (config.algorithm == "dfd1" || config.algorithm == "dfd2") {
    out = run_dfd(config, instance);
  } else if (config.algorithm == "ud_s" || config.algorithm == "ud") {
    out = run_ud(config, instance);
  } else {
    throw ParameterError("unknown algorithm: " + config.algorithm);
  }
  out.report = audit_trace(out.trace);
  return out;
}

namespace {

std::string csv_ext(const std::optional<ExtRat>& v) {
  if (!v) return "";
  if (v->unbounded) return "unbounded";
  return rat_to_decimal(v->value);
}

}  // namespace

std::string sweep_csv(const SweepSpec& spec) {
  if (spec.reps < 1) throw ParameterError("reps must be >= 1");
  RunConfig config;
  config.algorithm = spec.algorithm;
  if (spec.algorithm == "ud_s") {
    // Matches the default demand range of the instance generator.
    config.d = Rat(1, 1000);
    config.c = Rat(1000);
    config.eta = Rat(1);
  }
  std::ostringstream out;
  out << "n,rep,seed,algorithm,family,sigma,xi,eta,pass\n";
  for (long n : spec.ns) {
    for (long rep = 0; rep < spec.reps; ++rep) {
      std::uint64_t run_seed = spec.seed * 1000003ULL +
                               static_cast<std::uint64_t>(n) * 1009ULL +
                               static_cast<std::uint64_t>(rep);
      Instance instance = random_instance(n, spec.family, run_seed);
      RunResult result = run(config, instance);
      out << n << "," << rep << "," << run_seed << "," << spec.algorithm << ","
          << family_to_string(spec.family) << ","
          << csv_ext(result.report.sigma_arrivals_max) << ","
          << csv_ext(result.report.xi_max) << "," << csv_ext(result.report.eta_max)
          << "," << (result.report.pass() ? 1 : 0) << "\n";
    }
  }
  return out.str();
}

}  // namespace dynfair
