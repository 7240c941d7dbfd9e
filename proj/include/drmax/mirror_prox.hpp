#pragma once

#include <optional>
#include <utility>

#include "drmax/mirror.hpp"
#include "drmax/objective.hpp"

namespace drmax {

/// gamma_t = 1 / (2 t^{(1 - sigma)/2} sum beta) for the theory schedule
/// (sigma = smallest exponent of the modulus), or a constant.
class StepSchedule {
 public:
  static StepSchedule theory(HolderModulus h) { return StepSchedule(std::move(h), 0.0); }
  static StepSchedule fixed(double gamma);

  double operator()(int t) const;
  bool is_theory() const { return modulus_.has_value(); }
  const std::optional<HolderModulus>& modulus() const { return modulus_; }
  std::string describe() const;

 private:
  StepSchedule(std::optional<HolderModulus> h, double gamma)
      : modulus_(std::move(h)), gamma_(gamma) {}
  std::optional<HolderModulus> modulus_;
  double gamma_;
};

double step_size(const StepSchedule& schedule, int t);

struct MirrorProxConfig {
  int iterations = 100;
  StepSchedule schedule = StepSchedule::fixed(0.1);
  MirrorMap mirror_map = MirrorMap::euclidean();
  bool record_trajectory = true;
};

/// Half-step indices t whose iterates x_{t+1/2} compete for the returned point:
/// first = floor((T-2)/3) + 1, last = T - 1.
std::pair<int, int> candidate_window(int T);

/// Extragradient mirror-prox for monotone up-concave objectives. Returns the
/// half-step iterate of largest value inside candidate_window(T); ties go to the
/// earliest iterate.
SolveReport mirror_prox(const Objective& objective, const FeasibleRegion& region,
                        const MirrorProxConfig& cfg);

/// delta sqrt(2D) + 12 (D + 2) sum beta / T^{(1+sigma)/2} + T^{(1+sigma)/2} delta^2 / sum beta:
/// the additive slack in the 1/2 guarantee under the theory schedule.
double mirror_prox_slack(const HolderModulus& h, double D, double delta, int T);

/// sum_{t = first..last} gamma_t over the candidate window.
double window_step_sum(const StepSchedule& schedule, int T);

}  // namespace drmax
