#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "drmax/core.hpp"

namespace drmax {

/// Value + up-super-gradient oracle. `delta` declares the worst-case dual-norm
/// error of returned supergradients; `modulus` and `lipschitz` are optional
/// smoothness declarations used for step sizes and bounds. `value` must be
/// deterministic for a given point.
struct Objective {
  Eigen::Index dim = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> supergradient;
  NormKind norm = NormKind::L2;
  std::optional<HolderModulus> modulus;
  std::optional<double> lipschitz;
  double delta = 0.0;
  std::string name = "objective";
};

/// Checked calls: dimension and finiteness of oracle output.
double eval_value(const Objective& f, const Vector& x);
Vector eval_supergradient(const Objective& f, const Vector& x);

struct TrajectoryPoint {
  int iteration = 0;
  double value = 0.0;
  double seconds = 0.0;
};

struct SolveReport {
  Vector solution;
  double value = 0.0;
  std::vector<TrajectoryPoint> values;
  /// Mirror-prox only: value of each half-step iterate x_{t+1/2}, t = 1..T-1.
  std::vector<TrajectoryPoint> half_values;
  std::string solver_name;
  nlohmann::json config = nlohmann::json::object();
  /// Per oracle call certified inner gaps (DRO solvers).
  std::vector<double> certificates;
  std::vector<std::string> notes;
};

}  // namespace drmax
