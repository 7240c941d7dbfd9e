#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "drmax/mirror.hpp"
#include "drmax/region.hpp"
#include "support/test_objectives.hpp"

using namespace drmax;
using drmax::testing::vec;

namespace {

// Exact projection onto {0 <= x <= cap, sum x (= or <=) budget} by scanning the
// breakpoints of the piecewise-linear map tau -> sum clip(y - tau, 0, cap).
Vector breakpoint_projection(const Vector& y, double cap, double budget, bool equality) {
  auto clipped = [&](double tau) { return (y.array() - tau).cwiseMax(0.0).cwiseMin(cap).matrix().eval(); };
  auto total = [&](double tau) { return clipped(tau).sum(); };
  if (!equality && total(0.0) <= budget) return clipped(0.0);
  std::vector<double> bp;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    bp.push_back(y[i]);
    if (std::isfinite(cap)) bp.push_back(y[i] - cap);
  }
  std::sort(bp.begin(), bp.end());
  bp.insert(bp.begin(), bp.front() - budget - 1.0);
  bp.push_back(bp.back() + 1.0);
  for (size_t k = 0; k + 1 < bp.size(); ++k) {
    const double s0 = total(bp[k]);
    const double s1 = total(bp[k + 1]);
    if (s0 >= budget && s1 <= budget) {
      const double tau = s0 == s1 ? bp[k] : bp[k] + (s0 - budget) / (s0 - s1) * (bp[k + 1] - bp[k]);
      return clipped(tau);
    }
  }
  ADD_FAILURE() << "no bracket";
  return y;
}

Vector oracle_projection(const FeasibleRegion& r, const Vector& y) {
  if (const auto* b = std::get_if<Box>(&r)) return y.cwiseMax(b->lower).cwiseMin(b->upper);
  if (const auto* c = std::get_if<CappedSimplex>(&r)) return breakpoint_projection(y, c->cap, c->budget, c->equality);
  const auto& p = std::get<BudgetPolytope>(r);
  return breakpoint_projection(y, std::numeric_limits<double>::infinity(), p.budget, false);
}

std::vector<FeasibleRegion> sample_regions() {
  return {Box(vec({0, 0.2, 0, 1}), vec({1, 0.5, 2, 1})),
          Box::unit(6),
          CappedSimplex(5, 1.0, 2.0, true),
          CappedSimplex(6, 0.7, 2.5, false),
          CappedSimplex(3, 1.0, 1.5, true),
          BudgetPolytope(4, 1.5)};
}

Vector random_vector(std::mt19937_64& rng, Eigen::Index d, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = n(rng);
  return v;
}

}  // namespace

TEST(Region, ConstructionRejectsInvalidParameters) {
  EXPECT_THROW(Box(vec({1}), vec({0})), Error);
  EXPECT_THROW(Box(vec({-1}), vec({0})), Error);
  EXPECT_THROW(CappedSimplex(2, 1.0, 3.0, true), Error);
  EXPECT_THROW(CappedSimplex(2, 1.0, 0.0, true), Error);
  EXPECT_THROW(BudgetPolytope(2, -1.0), Error);
}

TEST(Lmo, Examples) {
  EXPECT_EQ(lmo(CappedSimplex(4, 1.0, 2.0), vec({3, 1, 2, 0})), vec({1, 0, 1, 0}));
  EXPECT_EQ(lmo(Box::unit(2), vec({0, 0})), vec({0, 0}));
  EXPECT_EQ(lmo(CappedSimplex(3, 1.0, 1.5), vec({2, 1, 0})), vec({1, 0.5, 0}));
}

TEST(Lmo, TiesGoToLowestIndex) {
  EXPECT_EQ(lmo(CappedSimplex(3, 1.0, 1.0), vec({1, 1, 1})), vec({1, 0, 0}));
  EXPECT_EQ(lmo(BudgetPolytope(3, 2.0), vec({0.5, 2, 2})), vec({0, 2, 0}));
  EXPECT_EQ(lmo(CappedSimplex(3, 1.0, 1.0, false), vec({-1, -2, -3})), vec({0, 0, 0}));
}

TEST(Lmo, RejectsDimensionMismatch) {
  EXPECT_THROW(lmo(Box::unit(2), vec({1, 2, 3})), Error);
}

TEST(Lmo, OptimalAgainstRandomFeasiblePoints) {
  std::mt19937_64 rng(1);
  for (const auto& r : sample_regions()) {
    const auto d = region_dim(r);
    std::vector<Vector> xs;
    for (int i = 0; i < 1000; ++i) xs.push_back(sample_feasible(r, rng));
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector g = random_vector(rng, d, 1.0);
      const Vector v = lmo(r, g);
      ASSERT_TRUE(contains(r, v, 1e-12)) << describe(r);
      const double best = g.dot(v);
      for (const auto& x : xs) ASSERT_GE(best, g.dot(x) - 1e-9) << describe(r);
    }
  }
}

TEST(Project, Examples) {
  EXPECT_TRUE(project(CappedSimplex(3, 1.0, 1.0), vec({2, 0, 0})).isApprox(vec({1, 0, 0}), 1e-12));
  EXPECT_EQ(project(Box::unit(2), vec({0.3, 0.7})), vec({0.3, 0.7}));
  EXPECT_TRUE(project(CappedSimplex(2, 1.0, 1.0), vec({0.5, 0.5})).isApprox(vec({0.5, 0.5}), 1e-14));
}

TEST(Project, MatchesBreakpointOracleAndVariationalInequality) {
  std::mt19937_64 rng(2);
  for (const auto& r : sample_regions()) {
    const auto d = region_dim(r);
    for (int trial = 0; trial < 300; ++trial) {
      const Vector y = random_vector(rng, d, 2.0);
      const Vector p = project(r, y);
      ASSERT_TRUE(contains(r, p, 1e-10)) << describe(r);
      ASSERT_LE((p - oracle_projection(r, y)).lpNorm<Eigen::Infinity>(), 1e-9) << describe(r);
      for (int k = 0; k < 20; ++k) {
        const Vector x = sample_feasible(r, rng);
        ASSERT_LE((y - p).dot(x - p), 1e-9);
      }
    }
  }
}

TEST(Project, SumConstraintWithinTolerance) {
  std::mt19937_64 rng(3);
  const CappedSimplex r(40, 1.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector p = project(r, random_vector(rng, 40, 10.0));
    EXPECT_NEAR(p.sum(), 5.0, 1e-10);
  }
}

TEST(Radius, BoundsEveryFeasiblePoint) {
  std::mt19937_64 rng(4);
  for (const auto& r : sample_regions()) {
    for (auto n : {NormKind::L1, NormKind::L2, NormKind::LInf}) {
      const double R = radius(r, n);
      for (int i = 0; i < 500; ++i) ASSERT_LE(norm(n, sample_feasible(r, rng)), R + 1e-12);
      // Vertices reached by the LMO are the extreme cases.
      for (int i = 0; i < 200; ++i) {
        ASSERT_LE(norm(n, lmo(r, random_vector(rng, region_dim(r), 1.0))), R + 1e-12);
      }
    }
  }
}

TEST(Bregman, EuclideanExamples) {
  const auto map = MirrorMap::euclidean();
  EXPECT_DOUBLE_EQ(bregman(map, vec({0, 0}), vec({3, 4})), 12.5);
  EXPECT_DOUBLE_EQ(bregman(map, vec({0.3, 2}), vec({0.3, 2})), 0.0);
  EXPECT_DOUBLE_EQ(bregman(map, vec({1, 1}), vec({2, 0})), 1.0);
}

TEST(Bregman, ThreePointIdentityAndStrongConvexity) {
  const auto map = MirrorMap::euclidean();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vector a = random_vector(rng, 4, 1.0);
    const Vector b = random_vector(rng, 4, 1.0);
    const Vector c = random_vector(rng, 4, 1.0);
    const double lhs = (map.grad_phi(a) - map.grad_phi(b)).dot(b - c);
    const double rhs = bregman(map, a, c) - bregman(map, b, c) - bregman(map, a, b);
    EXPECT_NEAR(lhs, rhs, 1e-10);
    EXPECT_GE(bregman(map, a, b), 0.5 * (a - b).squaredNorm() - 1e-12);
  }
}

TEST(Prox, Examples) {
  const auto map = MirrorMap::euclidean();
  EXPECT_TRUE(prox(Box::unit(2), map, vec({0.5, 0.5}), vec({1, -1})).isApprox(vec({0, 1})));
  EXPECT_EQ(prox(Box::unit(2), map, vec({0.2, 0.9}), vec({0, 0})), vec({0.2, 0.9}));
  EXPECT_TRUE(prox(CappedSimplex(2, 1.0, 1.0), map, vec({0.5, 0.5}), vec({0.2, -0.2}))
                  .isApprox(vec({0.3, 0.7}), 1e-12));
}

TEST(Prox, RejectsInfeasibleCenter) {
  EXPECT_THROW(prox(Box::unit(2), MirrorMap::euclidean(), vec({2, 0}), vec({0, 0})), Error);
}

TEST(Prox, MinimizesProxObjective) {
  const auto map = MirrorMap::euclidean();
  std::mt19937_64 rng(6);
  for (const auto& r : sample_regions()) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vector x = sample_feasible(r, rng);
      const Vector xi = random_vector(rng, region_dim(r), 1.0);
      const Vector z = prox(r, map, x, xi);
      const double best = xi.dot(z) + bregman(map, x, z);
      for (int k = 0; k < 30; ++k) {
        const Vector w = sample_feasible(r, rng);
        ASSERT_LE(best, xi.dot(w) + bregman(map, x, w) + 1e-9);
      }
    }
  }
}

TEST(BregmanDiameter, Examples) {
  const auto map = MirrorMap::euclidean();
  EXPECT_DOUBLE_EQ(bregman_diameter(Box::unit(2), map), 1.0);
  EXPECT_DOUBLE_EQ(bregman_diameter(Box(vec({0.5, 1}), vec({0.5, 1})), map), 0.0);
  EXPECT_NEAR(bregman_diameter(CappedSimplex(2, 1.0, 1.0), map), 1.0, 1e-15);
}

TEST(BregmanDiameter, BoundsSampledDivergences) {
  const auto map = MirrorMap::euclidean();
  std::mt19937_64 rng(7);
  for (const auto& r : sample_regions()) {
    const double D = bregman_diameter(r, map);
    for (int i = 0; i < 2000; ++i) {
      const Vector x = lmo(r, random_vector(rng, region_dim(r), 1.0));
      const Vector y = lmo(r, random_vector(rng, region_dim(r), 1.0));
      ASSERT_LE(bregman(map, y, x), D + 1e-12) << describe(r);
    }
  }
}

TEST(Region, ContainsAndDescribe) {
  EXPECT_TRUE(contains(CappedSimplex(2, 1.0, 1.0), vec({0.4, 0.6})));
  EXPECT_FALSE(contains(CappedSimplex(2, 1.0, 1.0), vec({0.4, 0.4})));
  EXPECT_TRUE(contains(CappedSimplex(2, 1.0, 1.0, false), vec({0.4, 0.4})));
  EXPECT_FALSE(contains(BudgetPolytope(2, 1.0), vec({-0.1, 0.4})));
  EXPECT_FALSE(describe(Box::unit(3)).empty());
}
