#pragma once

#include <cstdint>
#include <vector>

#include "drmax/mirror_prox.hpp"
#include "drmax/region.hpp"

namespace drmax {

/// F = min_i F_i over differentiable, monotone, up-concave, L-Lipschitz members.
struct RobustObjective {
  std::vector<Objective> members;
  double lipschitz = 0.0;
  bool lipschitz_estimated = false;
  NormKind norm = NormKind::L2;

  /// Uses the supplied L.
  RobustObjective(std::vector<Objective> members, double lipschitz, NormKind norm);
  /// Estimates L as 1.1 * max_i sup over `samples` feasible points of ||grad F_i||_*.
  static RobustObjective with_estimated_lipschitz(std::vector<Objective> members,
                                                  const FeasibleRegion& region, NormKind norm,
                                                  int samples = 10000, std::uint64_t seed = 0);

  Eigen::Index dim() const { return members.front().dim; }
};

struct RobustValue {
  double value = 0.0;
  std::vector<int> active;  ///< 0-based member indices within 1e-9 of the minimum
};

RobustValue robust_value(const RobustObjective& obj, const Vector& x);

/// Gradient of the lowest-index active member.
Vector active_supergradient(const RobustObjective& obj, const Vector& x);

/// The minimum as a plain objective with declared modulus h = [(2L, 0)].
Objective as_objective(const RobustObjective& obj);

/// Mirror-prox on the minimum with the theory schedule for h = 2L, i.e.
/// gamma_t = 1 / (4 L sqrt(t)).
SolveReport robust_mirror_prox(const RobustObjective& obj, const FeasibleRegion& region, int T,
                               const MirrorMap& map = MirrorMap::euclidean());

}  // namespace drmax
