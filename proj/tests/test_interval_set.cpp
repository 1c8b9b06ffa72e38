#include <random>

#include "doctest.h"
#include "dynfair/errors.hpp"
#include "dynfair/interval_set.hpp"

using namespace dynfair;

namespace {

IntervalSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_int_distribution<int> grid(0, 24);
  std::vector<IntervalSet::Piece> pieces;
  int k = count(rng);
  for (int i = 0; i < k; ++i) {
    int a = grid(rng), b = grid(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    pieces.push_back({Rat(a, 24), Rat(b, 24)});
  }
  return IntervalSet::from_pieces(std::move(pieces));
}

}  // namespace

TEST_CASE("measure") {
  CHECK(IntervalSet().measure() == 0);
  CHECK(IntervalSet::from_pieces({{Rat(0), Rat(1, 2)}, {Rat(1, 4), Rat(3, 4)}})
            .measure() == Rat(3, 4));
  CHECK(IntervalSet::unit().measure() == 1);
}

TEST_CASE("union") {
  IntervalSet a = IntervalSet::from_pieces({{Rat(0), Rat(1, 4)}, {Rat(1, 2), Rat(3, 4)}});
  IntervalSet b = IntervalSet::single(Rat(1, 4), Rat(1, 2));
  CHECK(set_union(a, b) == IntervalSet::single(Rat(0), Rat(3, 4)));
  CHECK(set_union(a, IntervalSet()) == a);
  IntervalSet c = set_union(IntervalSet::single(Rat(0), Rat(1, 3)),
                            IntervalSet::single(Rat(2, 3), Rat(1)));
  REQUIRE(c.pieces().size() == 2);
  CHECK(c.pieces()[0] == IntervalSet::Piece{Rat(0), Rat(1, 3)});
  CHECK(c.pieces()[1] == IntervalSet::Piece{Rat(2, 3), Rat(1)});
}

TEST_CASE("intersect") {
  IntervalSet a = IntervalSet::single(Rat(0), Rat(1, 3));
  CHECK(set_intersect(a, IntervalSet::single(Rat(1, 4), Rat(1))) ==
        IntervalSet::single(Rat(1, 4), Rat(1, 3)));
  CHECK(set_intersect(a, a) == a);
  CHECK(set_intersect(IntervalSet::single(Rat(0), Rat(1, 4)),
                      IntervalSet::single(Rat(1, 2), Rat(1)))
            .empty());
}

TEST_CASE("subtract") {
  CHECK(set_subtract(IntervalSet::unit(), IntervalSet::single(Rat(1, 4), Rat(1, 2))) ==
        IntervalSet::from_pieces({{Rat(0), Rat(1, 4)}, {Rat(1, 2), Rat(1)}}));
  IntervalSet a = IntervalSet::from_pieces({{Rat(0), Rat(1, 8)}, {Rat(1, 2), Rat(1)}});
  CHECK(set_subtract(a, IntervalSet()) == a);
  CHECK(set_subtract(a, a).empty());
}

TEST_CASE("is_subset_of") {
  CHECK(IntervalSet().is_subset_of(IntervalSet()));
  CHECK(IntervalSet().is_subset_of(IntervalSet::unit()));
  CHECK(IntervalSet::single(Rat(0), Rat(1, 2)).is_subset_of(IntervalSet::unit()));
  CHECK_FALSE(IntervalSet::single(Rat(0), Rat(1, 2))
                  .is_subset_of(IntervalSet::single(Rat(1, 4), Rat(1))));
}

TEST_CASE("construction validates range") {
  CHECK_THROWS_AS(IntervalSet::single(Rat(1, 2), Rat(1, 4)), ParameterError);
  CHECK_THROWS_AS(IntervalSet::single(Rat(0), Rat(3, 2)), ParameterError);
  CHECK_THROWS_AS(IntervalSet::single(Rat(-1, 4), Rat(1, 2)), ParameterError);
}

TEST_CASE("canonical form") {
  // Touching and overlapping pieces merge; order does not matter.
  IntervalSet a = IntervalSet::from_pieces(
      {{Rat(1, 2), Rat(3, 4)}, {Rat(0), Rat(1, 2)}, {Rat(1, 4), Rat(5, 8)}});
  CHECK(a == IntervalSet::single(Rat(0), Rat(3, 4)));
  for (std::size_t k = 0; k + 1 < a.pieces().size(); ++k)
    CHECK(a.pieces()[k].hi < a.pieces()[k + 1].lo);
  // Idempotence.
  CHECK(IntervalSet::from_pieces(a.pieces()) == a);
}

TEST_CASE("algebraic properties on random sets") {
  std::mt19937_64 rng(20240817);
  for (int iter = 0; iter < 500; ++iter) {
    IntervalSet a = random_set(rng);
    IntervalSet b = random_set(rng);
    IntervalSet u = set_union(a, b);
    IntervalSet i = set_intersect(a, b);
    IntervalSet d = set_subtract(a, b);
    // Inclusion-exclusion, exact.
    CHECK(a.measure() + b.measure() == u.measure() + i.measure());
    // subtract/union inverse.
    CHECK(set_union(d, i) == a);
    // Disjointness of the split.
    CHECK(set_intersect(d, i).empty());
    CHECK(set_intersect(d, b).empty());
    // Subset relations.
    CHECK(i.is_subset_of(a));
    CHECK(a.is_subset_of(u));
    CHECK(d.is_subset_of(a));
    // Measure additivity for the disjoint pair (d, i).
    CHECK(d.measure() + i.measure() == a.measure());
  }
}
