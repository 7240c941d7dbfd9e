#include "drmax/objective.hpp"

namespace drmax {

double eval_value(const Objective& f, const Vector& x) {
  require_dim(x.size(), f.dim, "objective value");
  const double v = f.value(x);
  require(std::isfinite(v), "objective '" + f.name + "' returned a non-finite value");
  return v;
}

Vector eval_supergradient(const Objective& f, const Vector& x) {
  require_dim(x.size(), f.dim, "objective supergradient");
  Vector g = f.supergradient(x);
  require_dim(g.size(), f.dim, "supergradient oracle output");
  require(g.allFinite(), "objective '" + f.name + "' returned a non-finite supergradient");
  return g;
}

}  // namespace drmax
