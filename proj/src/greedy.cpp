#include "drmax/greedy.hpp"

#include <chrono>

namespace drmax {

std::string to_string(GradientPoint p) {
  return p == GradientPoint::ScaledPrev ? "scaled_prev" : "scaled_current";
}

SolveReport continuous_greedy(const Objective& objective, const FeasibleRegion& region,
                              const GreedyConfig& cfg) {
  require(cfg.iterations >= 1, "continuous_greedy: iterations must be >= 1");
  const Eigen::Index d = region_dim(region);
  require_dim(objective.dim, d, "continuous_greedy");

  const auto start = std::chrono::steady_clock::now();
  const double T = cfg.iterations;
  SolveReport report;
  report.solver_name = "continuous_greedy";
  report.config = {{"iterations", cfg.iterations},
                   {"gradient_point", to_string(cfg.gradient_point)},
                   {"region", describe(region)}};

  Vector x = Vector::Zero(d);
  for (int t = 1; t <= cfg.iterations; ++t) {
    const double scale = cfg.gradient_point == GradientPoint::ScaledPrev ? (t - 1) / T : t / T;
    const Vector g = eval_supergradient(objective, scale * x);
    const Vector v = lmo(region, g);
    x += (v - x) / static_cast<double>(t);
    if (cfg.record_trajectory) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report.values.push_back({t, eval_value(objective, x), secs});
    }
  }
  report.solution = x;
  report.value = cfg.record_trajectory ? report.values.back().value : eval_value(objective, x);
  if (objective.modulus) {
    report.config["bound_slack"] = greedy_slack(objective, region, cfg.iterations);
  }
  return report;
}

double greedy_slack(const Objective& objective, const FeasibleRegion& region, int iterations) {
  require(objective.modulus.has_value(), "greedy_slack: objective declares no Holder modulus");
  const double R = radius(region, objective.norm);
  double slack = 2.0 * objective.delta * R;
  for (const auto& term : objective.modulus->terms()) {
    slack += term.beta * std::pow(R, 1.0 + term.sigma) / std::pow(iterations, term.sigma);
  }
  return slack;
}

}  // namespace drmax
