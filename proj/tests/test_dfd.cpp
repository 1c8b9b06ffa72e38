#include <random>

#include "doctest.h"
#include "dynfair/dfd.hpp"
#include "dynfair/errors.hpp"

using namespace dynfair;
using Segment = PiecewiseConstantValuation::Segment;

namespace {

PiecewiseConstantValuation random_valuation(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> grid(1, 15);
  std::uniform_int_distribution<int> density(1, 5);  // positive everywhere
  std::vector<int> cuts;
  int k = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < k; ++i) cuts.push_back(grid(rng));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Segment> segs;
  int prev = 0;
  for (int c : cuts) {
    segs.push_back({Rat(prev, 16), Rat(c, 16), Rat(density(rng))});
    prev = c;
  }
  segs.push_back({Rat(prev, 16), Rat(1), Rat(density(rng))});
  return PiecewiseConstantValuation(std::move(segs)).normalized();
}

void check_partition_invariant(const DfdState& state) {
  IntervalSet acc = state.unallocated();
  for (long j = 1; j <= state.player_count(); ++j) {
    if (!state.is_live(j)) continue;
    CHECK(set_intersect(acc, state.allocation(j)).empty());
    acc = set_union(acc, state.allocation(j));
  }
  CHECK(acc == IntervalSet::unit());
}

}  // namespace

TEST_CASE("first arrival takes everything") {
  DfdState state;
  auto rec = dfd1_arrival(state, PiecewiseConstantValuation::uniform());
  CHECK_FALSE(rec.recalled_player.has_value());
  CHECK(state.allocation(1) == IntervalSet::unit());
  CHECK(state.unallocated().empty());
}

TEST_CASE("dfd1 i=2 uniform pair") {
  DfdState state;
  auto uniform = PiecewiseConstantValuation::uniform();
  dfd1_arrival(state, uniform);
  auto rec = dfd1_arrival(state, uniform);
  // sigma = 14, sigma_1 = 1: player 2 takes 13 of 14 equal pieces; the
  // value tie resolves to the lowest-index pieces.
  CHECK(rec.recalled_player == 1);
  CHECK(state.allocation(2).measure() == Rat(13, 14));
  CHECK(state.allocation(1) == IntervalSet::single(Rat(13, 14), Rat(1)));
  check_partition_invariant(state);
}

TEST_CASE("dfd1 i=2 adversarial support aligned to one piece") {
  DfdState state;
  dfd1_arrival(state, PiecewiseConstantValuation::uniform());
  auto v2 = PiecewiseConstantValuation::from_support(
      IntervalSet::single(Rat(0), Rat(1, 14)));
  dfd1_arrival(state, v2);
  CHECK(v2.eval(state.allocation(2)) == 1);
  check_partition_invariant(state);
}

TEST_CASE("dfd2 i=2 uniform pair") {
  DfdState state;
  auto uniform = PiecewiseConstantValuation::uniform();
  dfd2_arrival(state, uniform);
  auto rec = dfd2_arrival(state, uniform);
  CHECK(rec.recalled_player == 1);
  CHECK(state.allocation(2).measure() == Rat(1, 2));
  // Value tie across both halves: lexicographic tie-break takes the first.
  CHECK(state.allocation(2) == IntervalSet::single(Rat(0), Rat(1, 2)));
  check_partition_invariant(state);
}

TEST_CASE("dfd2 i=3 all-tie lexicographic tie-break") {
  DfdState state;
  auto uniform = PiecewiseConstantValuation::uniform();
  dfd2_arrival(state, uniform);
  dfd2_arrival(state, uniform);
  // A_1 = [1/2,1), A_2 = [0,1/2); all six candidate pieces have value 1/6.
  auto rec = dfd2_arrival(state, uniform);
  CHECK(rec.recalled_player == 1);
  CHECK(state.allocation(3) == IntervalSet::single(Rat(1, 2), Rat(2, 3)));
  check_partition_invariant(state);
}

TEST_CASE("dfd2 pigeonhole when the newcomer wants one player's holding") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 30; ++iter) {
    DfdState state;
    for (int a = 0; a < 4; ++a) dfd2_arrival(state, random_valuation(rng));
    long i = state.step() + 1;
    auto v_new = PiecewiseConstantValuation::from_support(state.allocation(1));
    IntervalSet before = state.allocation(1);
    auto rec = dfd2_arrival(state, v_new);
    CHECK(rec.recalled_player == 1);
    CHECK(state.allocation(i).is_subset_of(before));
    CHECK(v_new.eval(state.allocation(i)) >= Rat(1, i));
    check_partition_invariant(state);
  }
}

TEST_CASE("recallability: one prior player shrinks, others untouched") {
  std::mt19937_64 rng(47);
  DfdState state;
  std::vector<IntervalSet> prev;
  for (int a = 0; a < 8; ++a) {
    auto rec = dfd1_arrival(state, random_valuation(rng));
    for (long j = 1; j <= static_cast<long>(prev.size()); ++j) {
      if (rec.recalled_player == j) {
        CHECK(state.allocation(j).is_subset_of(prev[j - 1]));
        CHECK(set_union(state.allocation(j), rec.removed) == prev[j - 1]);
      } else {
        CHECK(state.allocation(j) == prev[j - 1]);
      }
    }
    check_partition_invariant(state);
    prev.clear();
    for (long j = 1; j <= state.player_count(); ++j) prev.push_back(state.allocation(j));
  }
}

TEST_CASE("departed resource stays unallocated") {
  std::mt19937_64 rng(53);
  DfdState state;
  for (int a = 0; a < 4; ++a) dfd2_arrival(state, random_valuation(rng));
  IntervalSet released = state.apply_departure(2);
  CHECK(released.is_subset_of(state.unallocated()));
  CHECK_FALSE(state.is_live(2));
  auto rec = dfd2_arrival(state, random_valuation(rng));
  CHECK(rec.recalled_player != 2);
  CHECK(released.is_subset_of(state.unallocated()));
  check_partition_invariant(state);
}

TEST_CASE("dfd1 subset choice equals exhaustive search with a sigma override") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<long> sd(7, 12);
  int done = 0;
  while (done < 60) {
    DfdState state;
    dfd1_arrival(state, random_valuation(rng));
    // Split into two players so several (donor, subset) pairs compete.
    {
      DfdConfig cfg;
      cfg.sigma_override = 2 + static_cast<long>(rng() % 3);
      dfd1_arrival(state, random_valuation(rng), cfg);
    }
    auto v_new = random_valuation(rng);
    long sigma = sd(rng);
    DfdConfig cfg;
    cfg.sigma_override = sigma;
    std::vector<IntervalSet> held = {state.allocation(1), state.allocation(2)};
    RecallRecord rec;
    try {
      rec = dfd1_arrival(state, v_new, cfg);
    } catch (const InfeasibleError&) {
      continue;  // a donor's own share was below 1/sigma; resample
    }
    Rat best(-1);
    for (long j = 1; j <= 2; ++j) {
      Rat share = state.valuation(j).eval(held[j - 1]);
      long sigma_j = static_cast<long>(ceil_rat(Rat(1) / share));
      long take = sigma - sigma_j;
      auto parts = equal_partition(state.valuation(j), held[j - 1], sigma);
      std::vector<Rat> vals;
      for (const auto& p : parts) vals.push_back(v_new.normalized().eval(p));
      // All cardinality-take subsets, by bitmask.
      for (unsigned long mask = 0; mask < (1ul << sigma); ++mask) {
        if (__builtin_popcountl(mask) != take) continue;
        Rat total(0);
        for (long k = 0; k < sigma; ++k) {
          if (mask & (1ul << k)) total += vals[k];
        }
        if (total > best) best = total;
      }
    }
    CHECK(v_new.normalized().eval(rec.removed) == best);
    ++done;
  }
}
