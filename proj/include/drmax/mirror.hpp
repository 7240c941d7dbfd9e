#pragma once

#include <functional>
#include <string>

#include "drmax/region.hpp"

namespace drmax {

/// A 1-strongly convex distance-generating function together with its prox
/// solver over a feasible region. Only the Euclidean map ships; other maps plug
/// in through the three callables.
struct MirrorMap {
  std::string name;
  std::function<double(const Vector&)> phi;
  std::function<Vector(const Vector&)> grad_phi;
  NormKind strong_convexity_norm = NormKind::L2;
  /// argmin_{z in region} <xi, z> + V_x(z)
  std::function<Vector(const FeasibleRegion&, const Vector& x, const Vector& xi)> prox_solver;
  /// argmin_{z in region} phi(z)
  std::function<Vector(const FeasibleRegion&)> center;

  static MirrorMap euclidean();
};

/// V_x(z) = phi(z) - phi(x) - <grad phi(x), z - x>.
double bregman(const MirrorMap& map, const Vector& x, const Vector& z);

/// argmin_{z in region} <xi, z> + V_x(z). Requires x in region.
Vector prox(const FeasibleRegion& region, const MirrorMap& map, const Vector& x, const Vector& xi);

/// Upper bound D on sup_{x,y in region} V_y(x).
double bregman_diameter(const FeasibleRegion& region, const MirrorMap& map);

}  // namespace drmax
