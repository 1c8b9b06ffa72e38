#include <cmath>

#include "doctest.h"
#include "dynfair/adversary.hpp"
#include "dynfair/errors.hpp"
#include "dynfair/instance.hpp"

using namespace dynfair;

TEST_CASE("envy adversary emits player 1's holding as support") {
  DfdState state;
  auto first = envy_adversary_step(state);
  REQUIRE(std::holds_alternative<PiecewiseConstantValuation>(first));
  CHECK(std::get<PiecewiseConstantValuation>(first) ==
        PiecewiseConstantValuation::uniform());

  dfd2_arrival(state, std::get<PiecewiseConstantValuation>(first));
  auto second = envy_adversary_step(state);
  REQUIRE(std::holds_alternative<PiecewiseConstantValuation>(second));
  // Player 1 holds [0,1), so the support-normalized valuation is uniform.
  CHECK(std::get<PiecewiseConstantValuation>(second) ==
        PiecewiseConstantValuation::uniform());

  dfd2_arrival(state, std::get<PiecewiseConstantValuation>(second));
  auto third = envy_adversary_step(state);
  REQUIRE(std::holds_alternative<PiecewiseConstantValuation>(third));
  auto v3 = std::get<PiecewiseConstantValuation>(third);
  CHECK(v3.total_mass() == 1);
  CHECK(v3.eval(state.allocation(1)) == 1);

  // Starved player 1: the construction is undefined, which is the evidence.
  DfdState starved;
  dfd2_arrival(starved, PiecewiseConstantValuation::uniform());
  dfd2_arrival(starved, PiecewiseConstantValuation::uniform());
  starved.apply_departure(1);
  auto halted = envy_adversary_step(starved);
  CHECK(std::holds_alternative<HaltCertificate>(halted));
}

TEST_CASE("envy lower bound bisection") {
  // n=3: one recall step, so (xi/(1+xi))^1 = 1/xi^2, i.e. xi^3 = xi + 1,
  // whose real root is the plastic number.
  CHECK(std::abs(envy_lower_bound(3) - 1.3247179572447460) <= 1e-9);
  // n=4: (xi/(1+xi))^2 = 1/xi^2 reduces to xi^2 = xi + 1, the golden ratio.
  double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(envy_lower_bound(4) - golden) <= 1e-9);

  // Self-consistency residual at n=100.
  double xi = envy_lower_bound(100);
  double residual = 98.0 * std::log(1.0 - 1.0 / (1.0 + xi)) + 2.0 * std::log(xi);
  CHECK(std::abs(residual) < 1e-9);

  // Monotone growth and the Theta(n / ln n) band.
  CHECK(envy_lower_bound(10000) > envy_lower_bound(1000));
  for (long n : {16L, 64L, 256L, 1024L}) {
    double ratio = envy_lower_bound(n) / (n / std::log(static_cast<double>(n)));
    CHECK(ratio >= 0.1);
    CHECK(ratio <= 10.0);
  }
}

TEST_CASE("staged instance shapes") {
  auto k3 = staged_ud_instance(3, 1);
  CHECK(k3.n == 512);
  REQUIRE(k3.stages.size() == 3);
  CHECK(k3.stages[0].count == 256);
  CHECK(k3.stages[0].demand == Rat(1, 64));
  CHECK(k3.stages[1].count == 64);
  CHECK(k3.stages[1].demand == Rat(1, 8));
  CHECK(k3.stages[2].count == 16);
  CHECK(k3.stages[2].demand == Rat(1));

  auto k1 = staged_ud_instance(1, 1);
  CHECK(k1.n == 8);
  REQUIRE(k1.stages.size() == 1);
  CHECK(k1.stages[0].count == 4);
  CHECK(k1.stages[0].demand == Rat(1));

  auto t2 = staged_ud_instance(2, 2);
  CHECK(t2.n == 256);
  REQUIRE(t2.stages.size() == 2);
  CHECK(t2.stages[0].count == 128);
  CHECK(t2.stages[0].demand == Rat(16, 256));
  CHECK(t2.stages[1].count == 16);
  CHECK(t2.stages[1].demand == Rat(1));
}

TEST_CASE("staged instance totals match the closed form") {
  for (long k : {1L, 2L, 3L, 4L}) {
    auto inst = staged_ud_instance(k, 1);
    long players = 0;
    Rat demand(0);
    for (std::size_t j = 0; j < inst.stages.size(); ++j) {
      players += inst.stages[j].count;
      demand += Rat(inst.stages[j].count) * inst.stages[j].demand;
      // Cumulative demand after stage j is 2^(j+2) - 4.
      CHECK(demand == Rat((1L << (j + 3)) - 4));
    }
    CHECK(players < inst.n);
    CHECK(inst.stages.back().demand == 1);
    CHECK(static_cast<long>(inst.arrival_demands().size()) == players);
  }
  CHECK_THROWS_AS(staged_ud_instance(0, 1), ParameterError);
}

TEST_CASE("random instances are deterministic and valid") {
  for (Family f : {Family::uniform, Family::pwu, Family::pwc}) {
    Instance a = random_instance(5, f, 7);
    Instance b = random_instance(5, f, 7);
    CHECK(instance_to_string(a) == instance_to_string(b));
    CHECK(a.arrival_count() == 5);
    for (const auto& ev : a.events) {
      const auto& arr = std::get<ArrivalEvent>(ev);
      CHECK(arr.valuation.as_pwc().total_mass() == 1);
    }
  }
  Instance d = random_instance(5, Family::demand, 7);
  for (const auto& ev : d.events) {
    const auto& arr = std::get<ArrivalEvent>(ev);
    CHECK(arr.valuation.d > 0);
    CHECK(arr.valuation.d <= 1);
  }
  CHECK(instance_to_string(random_instance(3, Family::pwu, 1)) !=
        instance_to_string(random_instance(3, Family::pwu, 2)));
}
