#include "drmax/mirror_prox.hpp"

#include <chrono>
#include <sstream>

namespace drmax {

StepSchedule StepSchedule::fixed(double gamma) {
  require(gamma > 0.0 && std::isfinite(gamma), "StepSchedule: fixed step must be positive");
  return StepSchedule(std::nullopt, gamma);
}

double StepSchedule::operator()(int t) const {
  require(t >= 1, "step_size: t must be >= 1");
  if (!modulus_) return gamma_;
  const double sigma = modulus_->sigma_min();
  return 1.0 / (2.0 * std::pow(static_cast<double>(t), 0.5 * (1.0 - sigma)) * modulus_->beta_sum());
}

std::string StepSchedule::describe() const {
  std::ostringstream os;
  if (modulus_) {
    os << "theory(sigma=" << modulus_->sigma_min() << ", beta_sum=" << modulus_->beta_sum() << ")";
  } else {
    os << "fixed(" << gamma_ << ")";
  }
  return os.str();
}

double step_size(const StepSchedule& schedule, int t) { return schedule(t); }

std::pair<int, int> candidate_window(int T) {
  require(T >= 3, "candidate_window: T must be >= 3");
  return {(T - 2) / 3 + 1, T - 1};
}

SolveReport mirror_prox(const Objective& objective, const FeasibleRegion& region,
                        const MirrorProxConfig& cfg) {
  const int T = cfg.iterations;
  require(T >= 3, "mirror_prox: iterations must be >= 3");
  require_dim(objective.dim, region_dim(region), "mirror_prox");
  const auto [first, last] = candidate_window(T);
  const auto& map = cfg.mirror_map;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  SolveReport report;
  report.solver_name = "mirror_prox";
  report.config = {{"iterations", T},
                   {"schedule", cfg.schedule.describe()},
                   {"mirror_map", map.name},
                   {"region", describe(region)},
                   {"window", {first, last}},
                   {"window_tie_break", "earliest"}};

  Vector x = map.center(region);
  if (cfg.record_trajectory) report.values.push_back({1, eval_value(objective, x), elapsed()});

  Vector best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int t = 1; t <= T - 1; ++t) {
    const double gamma = cfg.schedule(t);
    const Vector g = eval_supergradient(objective, x);
    const Vector half = map.prox_solver(region, x, -gamma * g);
    const Vector g_half = eval_supergradient(objective, half);
    Vector next = map.prox_solver(region, x, -gamma * g_half);

    const bool in_window = t >= first && t <= last;
    if (in_window || cfg.record_trajectory) {
      const double half_value = eval_value(objective, half);
      if (cfg.record_trajectory) report.half_values.push_back({t, half_value, elapsed()});
      if (in_window && half_value > best_value) {
        best_value = half_value;
        best = half;
      }
    }
    x = std::move(next);
    if (cfg.record_trajectory) report.values.push_back({t + 1, eval_value(objective, x), elapsed()});
  }

  report.solution = best;
  report.value = best_value;
  if (cfg.schedule.is_theory() && map.name == "euclidean") {
    const double D = bregman_diameter(region, map);
    report.config["bregman_diameter"] = D;
    report.config["bound_slack"] =
        mirror_prox_slack(*cfg.schedule.modulus(), D, objective.delta, T);
  }
  return report;
}

double mirror_prox_slack(const HolderModulus& h, double D, double delta, int T) {
  const double beta = h.beta_sum();
  const double rate = std::pow(static_cast<double>(T), 0.5 * (1.0 + h.sigma_min()));
  return delta * std::sqrt(2.0 * D) + 12.0 * (D + 2.0) * beta / rate + rate * delta * delta / beta;
}

double window_step_sum(const StepSchedule& schedule, int T) {
  const auto [first, last] = candidate_window(T);
  double acc = 0.0;
  for (int t = first; t <= last; ++t) acc += schedule(t);
  return acc;
}

}  // namespace drmax
