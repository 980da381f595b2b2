#include <doctest.h>

#include <random>
#include <stdexcept>

#include "instances.h"
#include "spantube/optimizer.h"
#include "spantube/special.h"

using namespace spantube;
using spantube::testing::constants;
using spantube::testing::random_instance;
using spantube::testing::witness_slack;

TEST_CASE("three constants") {
  const TubeSolution s = optimize_3_2(constants({0, 2, 4}));
  CHECK(s.epsilon_star == doctest::Approx(1.0));
  CHECK(s.p == 2);
}

TEST_CASE("a middle constant crossing nothing") {
  const FunctionSet fs({PolyFunc({{0, 0}, {1, 0}}), PolyFunc({{0, 4}, {1, 4}}), PolyFunc({{0, 2}, {1, 2}})});
  CHECK(optimize_3_2(fs).epsilon_star == doctest::Approx(1.0));
}

TEST_CASE("only three functions are accepted") {
  CHECK_THROWS_AS(solve_3_2(constants({0, 2})), std::invalid_argument);
  CHECK_THROWS_AS(solve_3_2(constants({0, 2, 4, 6})), std::invalid_argument);
}

TEST_CASE("trace states hold the envelope widths") {
  const ThreeTwoTrace t = solve_3_2(constants({0, 1, 4}));
  REQUIRE(t.states.size() >= 2);
  for (const SlabState& st : t.states) {
    CHECK(st.w1 == doctest::Approx(3.0));
    CHECK(st.w2 == doctest::Approx(1.0));
    CHECK(st.w == doctest::Approx(4.0));
  }
  CHECK(t.solution.epsilon_star == doctest::Approx(0.5));
}

TEST_CASE("switching between pairs mid-domain") {
  // Median climbs from the lower function to the upper one.
  const FunctionSet fs({PolyFunc({{0, 0}, {1, 0}}), PolyFunc({{0, 5}, {1, 5}}), PolyFunc({{0, 0.5}, {1, 4.5}})});
  const TubeSolution fast = optimize_3_2(fs);
  const TubeSolution general = optimize(fs, 2);
  CHECK(std::abs(fast.epsilon_star - general.epsilon_star) <= 1e-9);
  CHECK(witness_slack(fs, fast.witness, fast.epsilon_star, 2) >= 0);
}

TEST_CASE("linear solver agrees with the general optimizer") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    const FunctionSet fs = random_instance(rng, 3, 1, 20);
    const TubeSolution fast = optimize_3_2(fs);
    const TubeSolution general = optimize(fs, 2);
    CHECK(std::abs(fast.epsilon_star - general.epsilon_star) <= 1e-9);
    CHECK(witness_slack(fs, fast.witness, fast.epsilon_star, 2, 2000) >= 0);
  }
}
