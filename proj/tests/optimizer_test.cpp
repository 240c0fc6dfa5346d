#include "qsat/optimizer.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles/dense_oracle.hpp"
#include "qsat/error.hpp"
#include "test_util.hpp"

namespace qsat {
namespace {

constexpr double kPi = std::numbers::pi;

/// p = 1 maximum of <C> over a grid x grid lattice on [0,2pi) x [0,pi),
/// evaluated with the dense oracle.
double grid_scan_max(const KSatInstance& inst, int grid) {
  const std::uint32_t n = inst.num_variables();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<int> cost(dim);
  for (std::size_t x = 0; x < dim; ++x) cost[x] = oracle::cost(inst, x);
  std::vector<std::vector<oracle::cd>> phased(grid, std::vector<oracle::cd>(dim));
  for (int i = 0; i < grid; ++i) {
    const double gamma = 2 * kPi * i / grid;
    for (std::size_t x = 0; x < dim; ++x)
      phased[i][x] = std::exp(oracle::cd{0, -gamma * cost[x]}) / std::sqrt(static_cast<double>(dim));
  }
  double best = -1.0;
  for (int j = 0; j < grid; ++j) {
    const double beta = kPi * j / grid;
    oracle::Matrix mixer = oracle::Matrix::identity(1);
    for (std::uint32_t q = 0; q < n; ++q) mixer = oracle::kron(mixer, oracle::single_qubit(GateKind::kRx, 2 * beta));
    for (int i = 0; i < grid; ++i) {
      double e = 0.0;
      for (std::size_t r = 0; r < dim; ++r) {
        oracle::cd amp{};
        for (std::size_t c = 0; c < dim; ++c) amp += mixer(r, c) * phased[i][c];
        e += std::norm(amp) * cost[r];
      }
      best = std::max(best, e);
    }
  }
  return best;
}

TEST(LocalDescentTest, SingleClauseBeatsUniformAndMatchesGrid) {
  const KSatInstance inst(3, 3, {Clause({{0, false}, {1, true}, {2, false}})});
  const LocalDescentResult r = local_descent(inst, AngleSchedule({0.1}, {0.1}));
  EXPECT_GT(r.expectation, 7.0 / 8 + 1e-3);
  EXPECT_NEAR(r.expectation, grid_scan_max(inst, 400), 1e-3);
}

TEST(LocalDescentTest, FixedPointStaysPut) {
  const KSatInstance inst = generate_random_ksat(6, 3, 4.0, 5);
  const LocalDescentResult first = local_descent(inst, AngleSchedule({0.2, 0.3}, {0.4, 0.1}));
  const LocalDescentResult again = local_descent(inst, first.angles);
  EXPECT_LE(again.iterations, 1u);
  EXPECT_NEAR(again.expectation, first.expectation, 1e-12);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(again.angles.gammas[i], first.angles.gammas[i], 1e-6);
    EXPECT_NEAR(again.angles.betas[i], first.angles.betas[i], 1e-6);
  }
}

TEST(LocalDescentTest, TraceIsMonotone) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const KSatInstance inst = generate_random_ksat(6, 3, 4.0, rng.next_u64());
    const AngleSchedule init({rng.uniform01() * 6, rng.uniform01() * 6}, {rng.uniform01() * 3, rng.uniform01() * 3});
    const LocalDescentResult r = local_descent(inst, init);
    ASSERT_FALSE(r.trace.empty());
    EXPECT_NEAR(r.trace.front(), expectation(inst, init), 1e-12);
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_GE(r.trace[i], r.trace[i - 1]);
    EXPECT_GE(r.expectation, r.trace.front() - 1e-12);
    EXPECT_LE(r.iterations, 500u);
  }
}

TEST(BasinHoppingTest, WorkedExampleMatchesGridScan) {
  const KSatInstance inst = testing::worked_example();
  const OptimizationResult r = basin_hopping(inst, 4, 1, 7);
  EXPECT_NEAR(r.expectation, grid_scan_max(inst, 1000), 1e-3);
  EXPECT_NEAR(r.ideal_ratio, r.expectation / 4, 1e-15);
}

TEST(BasinHoppingTest, DeterministicGivenSeed) {
  const KSatInstance inst = generate_random_ksat(6, 3, 4.0, 2);
  const std::uint32_t c_opt = brute_force_optimum(inst).c_opt;
  const OptimizationResult a = basin_hopping(inst, c_opt, 2, 99);
  const OptimizationResult b = basin_hopping(inst, c_opt, 2, 99);
  EXPECT_EQ(a.angles, b.angles);
  EXPECT_EQ(a.expectation, b.expectation);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.seed, 99u);
}

TEST(BasinHoppingTest, ZeroHopsIsLocalDescent) {
  const KSatInstance inst = generate_random_ksat(6, 3, 4.0, 2);
  BasinHoppingOptions o;
  o.hops = 0;
  const OptimizationResult r = basin_hopping(inst, brute_force_optimum(inst).c_opt, 1, 0, o);
  const LocalDescentResult l = local_descent(inst, default_initial_angles(1));
  EXPECT_NEAR(r.expectation, l.expectation, 1e-10);
  EXPECT_EQ(r.trace.size(), 1u);
}

TEST(BasinHoppingTest, ResultInvariants) {
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    const KSatInstance inst = generate_random_ksat(6, 3 + t % 2, 3.0, rng.next_u64());
    const std::uint32_t c_opt = brute_force_optimum(inst).c_opt;
    BasinHoppingOptions o;
    o.hops = 4;
    const OptimizationResult r = basin_hopping(inst, c_opt, 2, rng.next_u64(), o);
    for (double g : r.angles.gammas) {
      EXPECT_GE(g, 0.0);
      EXPECT_LT(g, 2 * kPi);
    }
    for (double b : r.angles.betas) {
      EXPECT_GE(b, 0.0);
      EXPECT_LT(b, kPi);
    }
    EXPECT_NEAR(r.expectation, expectation(inst, r.angles), 1e-10);
    EXPECT_GT(r.ideal_ratio, 0.0);
    EXPECT_LE(r.ideal_ratio, 1.0);
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_GE(r.trace[i], r.trace[i - 1]);
  }
}

TEST(BasinHoppingTest, RejectsBadInput) {
  const KSatInstance inst = testing::worked_example();
  EXPECT_THROW(basin_hopping(inst, 4, 0, 0), Error);
  EXPECT_THROW(basin_hopping(inst, 0, 1, 0), Error);
  EXPECT_THROW(basin_hopping(inst, 4, 2, 0, {}, AngleSchedule({0.1}, {0.1})), Error);
}

TEST(WarmStartTest, AppendsIdentityRound) {
  const KSatInstance inst = testing::worked_example();
  const OptimizationResult p1 = basin_hopping(inst, 4, 1, 3);
  const AngleSchedule next = warm_start(p1);
  EXPECT_EQ(next.rounds(), 2u);
  EXPECT_EQ(next.gammas.back(), 0.0);
  EXPECT_EQ(next.betas.back(), 0.0);
  EXPECT_NEAR(expectation(inst, next), p1.expectation, 1e-12);
  const OptimizationResult p2 = basin_hopping(inst, 4, 2, 4, {}, next);
  EXPECT_GE(p2.expectation, p1.expectation - 1e-12);
}

TEST(SweepTest, MonotoneAndEarlyStop) {
  const KSatInstance inst = generate_random_ksat(6, 3, 4.0, 17);
  const std::uint32_t c_opt = brute_force_optimum(inst).c_opt;
  SweepOptions o;
  o.p_max = 6;
  const auto results = optimize_sweep(inst, c_opt, 1, o);
  ASSERT_FALSE(results.empty());
  for (std::size_t i = 1; i < results.size(); ++i) {
    EXPECT_EQ(results[i].angles.rounds(), results[i - 1].angles.rounds() + 1);
    EXPECT_GE(results[i].expectation, results[i - 1].expectation - 1e-12);
  }
  o.stop_ratio = 0.9;
  EXPECT_EQ(optimize_sweep(inst, c_opt, 1, o).size(), 1u);  // p = 1 already exceeds 0.9
}

TEST(ScheduleJsonTest, RoundTrip) {
  OptimizationResult r;
  r.angles = AngleSchedule({0.1, 0.2}, {0.3, 0.4});
  r.expectation = 3.5;
  r.ideal_ratio = 0.875;
  r.seed = 42;
  const std::string text = schedule_to_json(r, "abc");
  EXPECT_EQ(text,
            R"({"instance_id":"abc","p":2,"gammas":[0.1,0.2],"betas":[0.3,0.4],"expectation":3.5,"ideal_ratio":0.875,"seed":42})");
  const auto back = schedules_from_json(text);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].angles, r.angles);
  EXPECT_EQ(back[0].instance_id, "abc");
  EXPECT_EQ(back[0].seed, 42u);
  EXPECT_EQ(schedules_from_json("{\"schedules\":[" + text + "," + text + "]}").size(), 2u);
  EXPECT_THROW(schedules_from_json(R"({"p":3,"gammas":[0.1],"betas":[0.2]})"), Error);
  EXPECT_THROW(schedules_from_json("[{\"gammas\":[0.1]}]"), Error);
}

}  // namespace
}  // namespace qsat
