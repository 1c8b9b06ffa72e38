#include "dynfair/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dynfair/errors.hpp"

namespace dynfair {

AdversaryOutcome envy_adversary_step(const DfdState& state) {
  if (state.step() == 0) return PiecewiseConstantValuation::uniform();
  const IntervalSet& target = state.allocation(1);
  if (target.empty())
    return HaltCertificate{state.step(), "player 1 starved; envy unbounded"};
  return PiecewiseConstantValuation::from_support(target);
}

double envy_lower_bound(long n) {
  if (n < 3) throw ParameterError("envy_lower_bound requires n >= 3");
  auto g = [n](double xi) {
    return (static_cast<double>(n) - 2.0) * std::log(xi / (1.0 + xi)) + 2.0 * std::log(xi);
  };
  double lo = 1.0;
  double hi = static_cast<double>(n) * static_cast<double>(n);
  // g is increasing; g(1) < 0 and g(n^2) > 0 for n >= 3.
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-13 * lo; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<Rat> StagedUdInstance::arrival_demands() const {
  std::vector<Rat> out;
  for (const StagedStage& stage : stages) {
    for (long i = 0; i < stage.count; ++i) out.push_back(stage.demand);
  }
  return out;
}

Instance StagedUdInstance::to_instance() const {
  Instance out;
  out.n_max = n;
  out.family = "staged";
  out.params = "k=" + std::to_string(k) + " tau=" + std::to_string(tau);
  for (const Rat& d : arrival_demands()) {
    ValuationRecord v;
    v.kind = ValuationRecord::Kind::demand;
    v.d = d;
    out.events.push_back(ArrivalEvent{std::move(v)});
  }
  return out;
}

StagedUdInstance staged_ud_instance(long k, long tau) {
  if (k < 1) throw ParameterError("staged instance requires k >= 1");
  if (tau < 1) throw ParameterError("staged instance requires tau >= 1");
  const long base = 8 * tau;    // per-stage demand growth
  const long shrink = 4 * tau;  // per-stage player-count shrink
  Int n(1);
  for (long j = 0; j < k; ++j) n *= base;
  if (n > Int(1) << 40) throw ParameterError("staged instance too large");

  StagedUdInstance out;
  out.n = static_cast<long>(n);
  out.k = k;
  out.tau = tau;
  Int count = n / 2;
  Int demand_num(base);
  for (long j = 1; j <= k; ++j) {
    if (count * 2 * pow(Int(shrink), static_cast<unsigned>(j - 1)) != n)
      throw ParameterError("non-integer stage size");
    out.stages.push_back({static_cast<long>(count), Rat(demand_num, n)});
    if (j < k && count % shrink != 0) throw ParameterError("non-integer stage size");
    count /= shrink;
    demand_num *= base;
  }
  return out;
}

Family family_from_string(const std::string& name) {
  if (name == "uniform") return Family::uniform;
  if (name == "pwu") return Family::pwu;
  if (name == "pwc") return Family::pwc;
  if (name == "demand") return Family::demand;
  throw ParameterError("unknown family: " + name);
}

std::string family_to_string(Family family) {
  switch (family) {
    case Family::uniform:
      return "uniform";
    case Family::pwu:
      return "pwu";
    case Family::pwc:
      return "pwc";
    case Family::demand:
      return "demand";
  }
  throw ParameterError("unknown family");
}

namespace {

// Plain modulo draws: std::uniform_int_distribution is not portable across
// standard library implementations, and instances must be seed-reproducible.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

constexpr long kGrid = 64;

ValuationRecord random_pwu(std::mt19937_64& rng) {
  long pairs = draw(rng, 1, 4);
  std::vector<long> cuts;
  while (static_cast<long>(cuts.size()) < 2 * pairs) {
    long c = draw(rng, 0, kGrid);
    bool seen = false;
    for (long x : cuts) seen = seen || x == c;
    if (!seen) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<IntervalSet::Piece> pieces;
  for (long p = 0; p < pairs; ++p)
    pieces.push_back({Rat(cuts[2 * p], kGrid), Rat(cuts[2 * p + 1], kGrid)});
  ValuationRecord out;
  out.kind = ValuationRecord::Kind::pwu;
  out.support = IntervalSet::from_pieces(std::move(pieces));
  return out;
}

ValuationRecord random_pwc(std::mt19937_64& rng) {
  long breaks = draw(rng, 1, 4);
  std::vector<long> cuts{0, kGrid};
  while (static_cast<long>(cuts.size()) < breaks + 2) {
    long c = draw(rng, 1, kGrid - 1);
    bool seen = false;
    for (long x : cuts) seen = seen || x == c;
    if (!seen) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<PiecewiseConstantValuation::Segment> segs;
  bool positive = false;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    Rat w(draw(rng, 0, 8));
    positive = positive || w > 0;
    segs.push_back({Rat(cuts[s], kGrid), Rat(cuts[s + 1], kGrid), std::move(w)});
  }
  if (!positive) segs.back().density = 1;
  ValuationRecord out;
  out.kind = ValuationRecord::Kind::pwc;
  out.segments = std::move(segs);
  return out;
}

}  // namespace

Instance random_instance(long n, Family family, std::uint64_t seed, const Rat& d_min,
                         const Rat& c) {
  if (n < 1) throw ParameterError("random_instance requires n >= 1");
  if (family == Family::demand) {
    if (d_min <= 0 || c < 1 || c * d_min > 1)
      throw ParameterError("demand family requires 0 < d_min and 1 <= c with c*d_min <= 1");
  }
  std::mt19937_64 rng(seed);
  Instance out;
  out.n_max = n;
  out.family = family_to_string(family);
  out.seed = seed;
  for (long i = 0; i < n; ++i) {
    ValuationRecord v;
    switch (family) {
      case Family::uniform:
        v.kind = ValuationRecord::Kind::pwc;
        v.segments = {{Rat(0), Rat(1), Rat(1)}};
        break;
      case Family::pwu:
        v = random_pwu(rng);
        break;
      case Family::pwc:
        v = random_pwc(rng);
        break;
      case Family::demand: {
        constexpr long kDemandGrid = 1000;
        v.kind = ValuationRecord::Kind::demand;
        v.d = d_min + (c - 1) * d_min * Rat(draw(rng, 0, kDemandGrid), kDemandGrid);
        break;
      }
    }
    out.events.push_back(ArrivalEvent{std::move(v)});
  }
  return out;
}

}  // namespace dynfair
