#pragma once

#include "drmax/objective.hpp"
#include "drmax/region.hpp"

namespace drmax {

/// Where the gradient oracle is queried at iteration t.
enum class GradientPoint {
  ScaledPrev,     ///< ((t-1)/T) x_{t-1}
  ScaledCurrent,  ///< (t/T) x_{t-1}
};

struct GreedyConfig {
  int iterations = 100;
  GradientPoint gradient_point = GradientPoint::ScaledPrev;
  bool record_trajectory = true;
};

/// Continuous greedy for monotone up-concave objectives: v_t = lmo(g_t),
/// x_t = (1 - 1/t) x_{t-1} + v_t / t, starting from x_0 = 0. Returns x_T.
SolveReport continuous_greedy(const Objective& objective, const FeasibleRegion& region,
                              const GreedyConfig& cfg);

/// 2 delta R + sum_i beta_i R^{1+sigma_i} / T^{sigma_i}: the additive slack in the
/// (1 - 1/e) guarantee. Requires a declared modulus.
double greedy_slack(const Objective& objective, const FeasibleRegion& region, int iterations);

std::string to_string(GradientPoint p);

}  // namespace drmax
