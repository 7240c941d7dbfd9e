#include <random>

#include <gtest/gtest.h>

#include "drmax/bench/oracles.hpp"
#include "drmax/greedy.hpp"
#include "support/test_objectives.hpp"

using namespace drmax;
using namespace drmax::testing;

namespace {

GreedyConfig with_T(int T, GradientPoint p = GradientPoint::ScaledPrev) {
  GreedyConfig cfg;
  cfg.iterations = T;
  cfg.gradient_point = p;
  return cfg;
}

}  // namespace

TEST(ContinuousGreedy, LinearOnCappedSimplex) {
  const auto f = linear_objective(vec({3, 1, 2, 0}));
  const auto rep = continuous_greedy(f, CappedSimplex(4, 1.0, 2.0), with_T(10));
  EXPECT_TRUE(rep.solution.isApprox(vec({1, 0, 1, 0}), 1e-14));
  EXPECT_NEAR(rep.value, 5.0, 1e-12);
  ASSERT_EQ(rep.values.size(), 10u);
  EXPECT_EQ(rep.values.front().iteration, 1);
  EXPECT_EQ(rep.values.back().iteration, 10);
}

TEST(ContinuousGreedy, OneDimensionalIdentity) {
  const auto rep = continuous_greedy(linear_objective(vec({1})), Box::unit(1), with_T(5));
  EXPECT_NEAR(rep.solution[0], 1.0, 1e-15);
  EXPECT_NEAR(rep.value, 1.0, 1e-15);
}

TEST(ContinuousGreedy, ConcaveQuadraticMatchesGrid) {
  Matrix A(2, 2);
  A << 1, 0.5, 0.5, 1;
  const auto f = quadratic_objective(-A, vec({2, 2}));
  const auto rep = continuous_greedy(f, Box::unit(2), with_T(200));
  const auto opt = bench::brute_force_opt_grid(f, Box::unit(2), 0.01);
  EXPECT_GE(rep.value, opt.value - 0.02);
}

TEST(ContinuousGreedy, IteratesFollowAveragingRuleAndStayFeasible) {
  const auto q = random_dr_quadratic(4, 9);
  auto log = std::make_shared<std::vector<Vector>>();
  const auto f = logging(quadratic_objective(q.A, q.b), log);
  const CappedSimplex region(4, 1.0, 2.0);
  const int T = 40;
  const auto rep = continuous_greedy(f, region, with_T(T));
  ASSERT_EQ(log->size(), static_cast<size_t>(T));
  // Query t is ((t-1)/T) x_{t-1}, so x_{t-1} is recoverable for t >= 2.
  std::vector<Vector> xs(static_cast<size_t>(T) + 1);
  for (int t = 2; t <= T; ++t) xs[static_cast<size_t>(t - 1)] = (*log)[static_cast<size_t>(t - 1)] * T / (t - 1);
  xs[static_cast<size_t>(T)] = rep.solution;
  Vector prev = Vector::Zero(4);
  for (int t = 1; t <= T; ++t) {
    const Vector g = quadratic_objective(q.A, q.b).supergradient((*log)[static_cast<size_t>(t - 1)]);
    const Vector expected = (1.0 - 1.0 / t) * prev + lmo(region, g) / t;
    ASSERT_LE((xs[static_cast<size_t>(t)] - expected).lpNorm<Eigen::Infinity>(), 1e-12) << "t=" << t;
    ASSERT_TRUE(contains(region, xs[static_cast<size_t>(t)], 1e-12));
    prev = xs[static_cast<size_t>(t)];
  }
}

TEST(ContinuousGreedy, ScaledCurrentQueriesAtTOverT) {
  auto log = std::make_shared<std::vector<Vector>>();
  const auto f = logging(linear_objective(vec({1, 2})), log);
  const auto rep = continuous_greedy(f, Box::unit(2), with_T(4, GradientPoint::ScaledCurrent));
  ASSERT_EQ(log->size(), 4u);
  EXPECT_EQ((*log)[0], vec({0, 0}));
  // x_1 = (1, 1), so the second query is (2/4) x_1.
  EXPECT_TRUE((*log)[1].isApprox(vec({0.5, 0.5})));
  EXPECT_EQ(rep.config["gradient_point"], "scaled_current");
}

TEST(ContinuousGreedy, RejectsBadInput) {
  EXPECT_THROW(continuous_greedy(linear_objective(vec({1, 2})), Box::unit(3), with_T(5)), Error);
  EXPECT_THROW(continuous_greedy(linear_objective(vec({1})), Box::unit(1), with_T(0)), Error);
  Objective broken = linear_objective(vec({1}));
  broken.supergradient = [](const Vector&) { return vec({std::nan("")}); };
  EXPECT_THROW(continuous_greedy(broken, Box::unit(1), with_T(3)), Error);
}

TEST(ContinuousGreedy, DescentInequalityForSmoothQuadratics) {
  std::mt19937_64 rng(12);
  for (int seed = 0; seed < 5; ++seed) {
    const auto q = random_dr_quadratic(5, static_cast<std::uint64_t>(seed));
    const auto f = quadratic_objective(q.A, q.b);
    const auto& h = *f.modulus;
    for (int i = 0; i < 2000; ++i) {
      const Vector x = sample_feasible(Box::unit(5), rng);
      const Vector y = sample_feasible(Box::unit(5), rng);
      const double gap = f.value(x) - f.value(y) - f.supergradient(y).dot(x - y);
      ASSERT_GE(gap, -h.integrated((x - y).norm()) - 1e-8);
    }
  }
}

TEST(ContinuousGreedy, ApproximationFloorWithExactAndNoisyGradients) {
  const int T = 200;
  for (int seed = 0; seed < 10; ++seed) {
    const auto q = random_dr_quadratic(3, 100 + static_cast<std::uint64_t>(seed));
    const auto f = quadratic_objective(q.A, q.b);
    const auto opt = bench::quadratic_grid_opt(q.b, q.A, Box::unit(3), 0.02);
    const double slack = greedy_slack(f, Box::unit(3), T);
    const double exact = continuous_greedy(f, Box::unit(3), with_T(T)).value;
    EXPECT_GE(exact, (1.0 - std::exp(-1.0)) * opt.value - slack);

    const double delta = 0.1;
    const auto noisy = with_gradient_noise(f, delta, static_cast<std::uint64_t>(seed));
    const double noisy_value = continuous_greedy(noisy, Box::unit(3), with_T(T)).value;
    EXPECT_GE(noisy_value, (1.0 - std::exp(-1.0)) * opt.value - greedy_slack(noisy, Box::unit(3), T));
    EXPECT_GE(noisy_value, exact - 2.0 * delta * radius(Box::unit(3), NormKind::L2) - slack);
  }
}

TEST(ContinuousGreedy, SlackFormula) {
  Objective f = linear_objective(vec({1, 1}));
  f.modulus = HolderModulus({{2.0, 1.0}, {1.0, 0.5}});
  f.delta = 0.25;
  const double R = std::sqrt(2.0);
  const int T = 16;
  const double expected = 2 * 0.25 * R + 2.0 * std::pow(R, 2.0) / 16.0 + std::pow(R, 1.5) / 4.0;
  EXPECT_NEAR(greedy_slack(f, Box::unit(2), T), expected, 1e-12);
  f.modulus.reset();
  EXPECT_THROW(greedy_slack(f, Box::unit(2), T), Error);
}
