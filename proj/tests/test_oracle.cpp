#include <doctest.h>

#include <random>
#include <stdexcept>

#include "instances.h"
#include "oracle.h"
#include "spantube/optimizer.h"

using namespace spantube;
using spantube::testing::constants;
using spantube::testing::random_instance;

TEST_CASE("grid decision on two constants") {
  const FunctionSet fs = constants({0, 2});
  CHECK(oracle::grid_decide(fs, 1.0, 2, {0.05, 0.05}));
  CHECK(oracle::grid_decide(fs, 1.0, 2, {1e-3, 1e-3}));
  CHECK_FALSE(oracle::grid_decide(fs, 0.5, 2, {1e-3, 1e-3}));
}

TEST_CASE("grid decision rejects coarse grids and bad p") {
  const FunctionSet fs = constants({0, 2});
  CHECK_THROWS_AS(oracle::grid_decide(fs, 0.01, 2, {1e-3, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(oracle::grid_decide(fs, 1.0, 3, {}), std::invalid_argument);
}

TEST_CASE("grid optimum on three constants") {
  const FunctionSet fs = constants({0, 2, 4});
  const oracle::GridSpec grid{1e-3, 1e-3};
  CHECK(std::abs(oracle::grid_optimize(fs, 3, grid) - 2.0) <= grid.y_step);
  CHECK(std::abs(oracle::grid_optimize(fs, 2, grid) - 1.0) <= grid.y_step);
}

TEST_CASE("linear scan on three constants") {
  const FunctionSet fs = constants({0, 2, 4});
  CHECK(oracle::scan_optimize(fs, 2) == doctest::Approx(1.0));
  CHECK(oracle::scan_max_coverage(fs, 1.0) == 2);
  CHECK(oracle::scan_max_coverage(fs, 2.0) == 3);
}

TEST_CASE("grid bracket shrinks toward the exact optimum") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const FunctionSet fs = random_instance(rng, 4, 1, 6);
    const double star = optimize(fs, 2).epsilon_star;
    const double coarse = oracle::grid_optimize(fs, 2, {1e-2, 1e-2});
    const double fine = oracle::grid_optimize(fs, 2, {1e-3, 1e-3});
    CHECK(std::abs(coarse - star) <= 2e-2);
    CHECK(std::abs(fine - star) <= 2e-3);
  }
}

TEST_CASE("segment intersections of a symmetric cross") {
  const FunctionSet fs({PolyFunc({{0, 0}, {1, 2}}), PolyFunc({{0, 2}, {1, 0}})});
  const auto in = oracle::brute_force_intersections(fs, 1e-12);
  REQUIRE(in.size() == 1);
  CHECK(in[0].x == doctest::Approx(0.5));
}
