// Acceptance gate: exercises the per-step fairness bounds, the lower-bound
// constructions, and the structural trace contract at full scale, printing
// one pass/fail line per criterion. Exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <vector>

#include "dynfair/adversary.hpp"
#include "dynfair/audit.hpp"
#include "dynfair/dfd.hpp"
#include "dynfair/enclosure.hpp"
#include "dynfair/errors.hpp"
#include "dynfair/runner.hpp"

using namespace dynfair;

namespace {

int failures = 0;

void report_line(int criterion, const char* name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << "criterion " << criterion << " (" << name << "): "
            << (ok ? "PASS" : "FAIL") << " - " << detail << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criterion 7 accumulator: every trace from criteria 1-6 passes through here.
struct Structural {
  long checked = 0;
  long recall_fail = 0;
  long conservation_fail = 0;
  long replay_fail = 0;

  bool ok() const { return recall_fail + conservation_fail + replay_fail == 0; }

  void note(const RunResult& r) {
    ++checked;
    if (!check_recallable(r.trace, 1).ok || !r.report.recallable_ok) ++recall_fail;
    if (!r.report.conservation_ok) ++conservation_fail;
    Trace round_trip = trace_from_string(trace_to_string(r.trace));
    if (report_to_json(audit_trace(round_trip)) != report_to_json(r.report))
      ++replay_fail;
  }
};

Structural structural;

constexpr Family kFamilies[] = {Family::uniform, Family::pwu, Family::pwc};

std::uint64_t derive_seed(int criterion, long n, long rep) {
  return static_cast<std::uint64_t>(criterion) * 1000003007ull +
         static_cast<std::uint64_t>(n) * 7919ull + static_cast<std::uint64_t>(rep);
}

void criterion_bound_sweep(int criterion, const char* name, const std::string& algorithm,
                           const std::vector<long>& ns, long reps) {
  auto t0 = std::chrono::steady_clock::now();
  long runs = 0, bad = 0;
  std::string first_fail;
  for (long n : ns) {
    for (long rep = 0; rep < reps; ++rep) {
      Family family = kFamilies[rep % 3];
      Instance inst = random_instance(n, family, derive_seed(criterion, n, rep));
      RunConfig config;
      config.algorithm = algorithm;
      RunResult r = run(config, inst);
      structural.note(r);
      ++runs;
      if (!r.report.pass()) {
        ++bad;
        if (first_fail.empty())
          first_fail = " first failure: n=" + std::to_string(n) +
                       " rep=" + std::to_string(rep);
      }
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail), "%ld runs, %ld bound failures, %.0fs", runs,
                bad, seconds_since(t0));
  report_line(criterion, name, bad == 0, detail + first_fail);
}

void criterion3_adversary() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  // Closed-form validation of the bisection: n=3 reduces to xi^3 = xi + 1
  // (the plastic number) and n=4 to xi^2 = xi + 1 (the golden ratio).
  double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  if (std::abs(envy_lower_bound(3) - 1.3247179572447460) > 1e-9 ||
      std::abs(envy_lower_bound(4) - golden) > 1e-9) {
    ok = false;
    detail += " bisection fails a small-n closed form;";
  }

  for (long n : {16L, 64L, 256L, 1024L}) {
    double xi_min = envy_lower_bound(n);
    double band_base = static_cast<double>(n) / std::log(static_cast<double>(n));
    if (xi_min / band_base < 0.1 || xi_min / band_base > 10.0) {
      ok = false;
      detail += " xi_min outside the n/ln n band at n=" + std::to_string(n) + ";";
    }
    for (const char* algorithm : {"dfd2", "dfd1"}) {
      RunConfig config;
      config.algorithm = algorithm;
      config.adversary_envy = true;
      RunResult r = run(config, random_instance(n, Family::uniform,
                                                derive_seed(3, n, 0)));
      structural.note(r);
      double xi_obs = r.halt ? std::numeric_limits<double>::infinity()
                             : r.report.xi_max->to_double();
      if (xi_obs < xi_min - 1e-9) {
        ok = false;
        detail += std::string(" ") + algorithm + " xi_obs < xi_min at n=" +
                  std::to_string(n) + ";";
      }
      if (std::string(algorithm) == "dfd2") {
        double ratio = xi_obs / band_base;
        if (ratio < 0.1 || ratio > 10.0) {
          ok = false;
          detail += " dfd2 xi_obs outside the band at n=" + std::to_string(n) + ";";
        }
      }
    }
  }
  char timing[64];
  std::snprintf(timing, sizeof(timing), " %.0fs", seconds_since(t0));
  report_line(3, "envy lower bound realized", ok,
              (detail.empty() ? "xi_obs >= xi_min and band hold" : detail) + timing);
}

void criterion4_ud_s() {
  auto t0 = std::chrono::steady_clock::now();
  struct Tuple {
    Rat d, c, eta;
  };
  const Tuple tuples[] = {{Rat(1, 100), Rat(1), Rat(1)},
                          {Rat(1, 100), Rat(2), Rat(2)},
                          {Rat(1, 1000), Rat(4), Rat(4)}};
  long runs = 0, bad = 0;
  for (int t = 0; t < 3; ++t) {
    std::mt19937_64 rng(derive_seed(4, t, 0));
    for (long rep = 0; rep < 100; ++rep) {
      long length = 100 + static_cast<long>(rng() % 9901);  // up to 10^4 arrivals
      Instance inst = random_instance(length, Family::demand, derive_seed(4, t, rep + 1),
                                      tuples[t].d, tuples[t].c);
      RunConfig config;
      config.algorithm = "ud_s";
      config.d = tuples[t].d;
      config.c = tuples[t].c;
      config.eta = tuples[t].eta;
      RunResult r = run(config, inst);
      structural.note(r);
      ++runs;
      if (!r.report.pass()) ++bad;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "%ld sequences, %ld budget/fairness failures, %.0fs", runs, bad,
                seconds_since(t0));
  report_line(4, "ud_s budget and fairness", bad == 0, detail);
}

void criterion5_ud() {
  auto t0 = std::chrono::steady_clock::now();
  long runs = 0, bad = 0;
  for (long n : {16L, 256L, 4096L}) {
    for (long rep = 0; rep < 100; ++rep) {
      Instance inst = random_instance(n, Family::demand, derive_seed(5, n, rep));
      RunConfig config;
      config.algorithm = "ud";
      RunResult r = run(config, inst);
      structural.note(r);
      ++runs;
      if (!r.report.pass()) ++bad;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "%ld sequences, %ld feasibility/fairness failures, %.0fs", runs, bad,
                seconds_since(t0));
  report_line(5, "ud fairness and feasibility", bad == 0, detail);
}

void criterion6_staged_growth() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail = "eta/log2(n):";
  double prev = 0;
  for (long k = 2; k <= 5; ++k) {
    Instance inst = staged_ud_instance(k, 1).to_instance();
    RunConfig config;
    config.algorithm = "ud";
    RunResult r = run(config, inst);
    structural.note(r);
    double eta = r.report.eta_max->to_double();
    if (k > 2 && eta <= prev) ok = false;
    prev = eta;
    char buf[48];
    std::snprintf(buf, sizeof(buf), " k=%ld %.4f", k, eta / (3.0 * k));
    detail += buf;
  }
  char timing[32];
  std::snprintf(timing, sizeof(timing), " %.0fs", seconds_since(t0));
  report_line(6, "staged fairness must grow", ok, detail + timing);
}

void criterion7_structural() {
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%ld traces: %ld recallability, %ld conservation, %ld replay failures",
                structural.checked, structural.recall_fail,
                structural.conservation_fail, structural.replay_fail);
  report_line(7, "structural suite over all traces", structural.ok(), detail);
}

PiecewiseConstantValuation mini_valuation(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> grid(1, 15);
  std::uniform_int_distribution<int> density(1, 5);
  std::vector<int> cuts;
  int k = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < k; ++i) cuts.push_back(grid(rng));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<PiecewiseConstantValuation::Segment> segs;
  int prev = 0;
  for (int c : cuts) {
    segs.push_back({Rat(prev, 16), Rat(c, 16), Rat(density(rng))});
    prev = c;
  }
  segs.push_back({Rat(prev, 16), Rat(1), Rat(density(rng))});
  return PiecewiseConstantValuation(std::move(segs)).normalized();
}

bool brute_force_case(std::mt19937_64& rng, bool& attempted) {
  DfdState state;
  dfd1_arrival(state, mini_valuation(rng));
  DfdConfig split;
  split.sigma_override = 2 + static_cast<long>(rng() % 3);
  dfd1_arrival(state, mini_valuation(rng), split);
  PiecewiseConstantValuation v_new = mini_valuation(rng);
  long sigma = 7 + static_cast<long>(rng() % 6);  // sigma in [7, 12]
  std::vector<IntervalSet> held = {state.allocation(1), state.allocation(2)};
  DfdConfig cfg;
  cfg.sigma_override = sigma;
  RecallRecord rec;
  try {
    rec = dfd1_arrival(state, v_new, cfg);
  } catch (const InfeasibleError&) {
    attempted = false;  // a donor's own share was below 1/sigma; resample
    return true;
  }
  attempted = true;
  Rat best(-1);
  for (long j = 1; j <= 2; ++j) {
    Rat share = state.valuation(j).eval(held[j - 1]);
    long take = sigma - static_cast<long>(ceil_rat(Rat(1) / share));
    auto parts = equal_partition(state.valuation(j), held[j - 1], sigma);
    std::vector<Rat> vals;
    for (const auto& p : parts) vals.push_back(v_new.eval(p));
    for (unsigned long mask = 0; mask < (1ul << sigma); ++mask) {
      if (__builtin_popcountl(mask) != take) continue;
      Rat total(0);
      for (long k = 0; k < sigma; ++k) {
        if (mask & (1ul << k)) total += vals[k];
      }
      if (total > best) best = total;
    }
  }
  return v_new.eval(rec.removed) == best;
}

void criterion8_oracles() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(derive_seed(8, 0, 0));
  long subset_bad = 0;
  long done = 0;
  while (done < 1000) {
    bool attempted = false;
    if (!brute_force_case(rng, attempted)) ++subset_bad;
    if (attempted) ++done;
  }

  long partition_bad = 0;
  std::uniform_int_distribution<long> md(1, 64);
  std::uniform_int_distribution<int> grid(0, 16);
  done = 0;
  while (done < 1000) {
    PiecewiseConstantValuation v = mini_valuation(rng);
    std::vector<IntervalSet::Piece> pieces;
    for (int i = 0; i < 2; ++i) {
      int a = grid(rng), b = grid(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      pieces.push_back({Rat(a, 16), Rat(b, 16)});
    }
    if (pieces.empty()) pieces.push_back({Rat(0), Rat(1)});
    IntervalSet s = IntervalSet::from_pieces(std::move(pieces));
    Rat total = v.eval(s);
    if (total == 0) continue;
    long m = md(rng);
    auto parts = equal_partition(v, s, m);
    IntervalSet acc;
    bool good = parts.size() == static_cast<std::size_t>(m);
    for (const auto& p : parts) {
      if (v.eval(p) != total / m || !set_intersect(acc, p).empty()) good = false;
      acc = set_union(acc, p);
    }
    if (acc != s) good = false;
    if (!good) ++partition_bad;
    ++done;
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "1000 subset cases (%ld mismatches), 1000 partition cases "
                "(%ld mismatches), %.0fs",
                subset_bad, partition_bad, seconds_since(t0));
  report_line(8, "oracle equivalence", subset_bad + partition_bad == 0, detail);
}

}  // namespace

int main() {
  criterion_bound_sweep(1, "dfd1 per-step proportionality", "dfd1",
                        {4, 8, 16, 32, 64, 128}, 200);
  criterion_bound_sweep(2, "dfd2 per-step envy", "dfd2",
                        {4, 8, 16, 32, 64, 128, 256}, 200);
  criterion3_adversary();
  criterion4_ud_s();
  criterion5_ud();
  criterion6_staged_growth();
  criterion7_structural();
  criterion8_oracles();
  return failures == 0 ? 0 : 1;
}
