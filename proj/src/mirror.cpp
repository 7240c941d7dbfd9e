#include "drmax/mirror.hpp"

namespace drmax {

MirrorMap MirrorMap::euclidean() {
  MirrorMap m;
  m.name = "euclidean";
  m.phi = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  m.grad_phi = [](const Vector& x) -> Vector { return x; };
  m.strong_convexity_norm = NormKind::L2;
  m.prox_solver = [](const FeasibleRegion& region, const Vector& x, const Vector& xi) {
    return project(region, x - xi);
  };
  m.center = [](const FeasibleRegion& region) {
    return project(region, Vector::Zero(region_dim(region)));
  };
  return m;
}

double bregman(const MirrorMap& map, const Vector& x, const Vector& z) {
  require_dim(z.size(), x.size(), "bregman");
  return map.phi(z) - map.phi(x) - map.grad_phi(x).dot(z - x);
}

Vector prox(const FeasibleRegion& region, const MirrorMap& map, const Vector& x, const Vector& xi) {
  require_dim(x.size(), region_dim(region), "prox");
  require_dim(xi.size(), x.size(), "prox");
  require(contains(region, x, 1e-8), "prox: anchor point is infeasible");
  return map.prox_solver(region, x, xi);
}

double bregman_diameter(const FeasibleRegion& region, const MirrorMap& map) {
  require(map.name == "euclidean",
          "bregman_diameter: only the Euclidean map has a built-in diameter bound");
  if (const auto* b = std::get_if<Box>(&region)) {
    return 0.5 * (b->upper - b->lower).squaredNorm();
  }
  if (const auto* c = std::get_if<CappedSimplex>(&region)) {
    if (!c->equality) {
      // ||x - y||^2 <= ||x||^2 + ||y||^2 for x, y >= 0.
      const double r = radius(region, NormKind::L2);
      return r * r;
    }
    // Every vertex is a permutation of the same pattern, so the farthest pair is
    // one vertex and the minimizer of <v, .> over the region.
    Vector rank(c->dim);
    for (Eigen::Index i = 0; i < c->dim; ++i) rank[i] = static_cast<double>(c->dim - i);
    const Vector v = lmo(region, rank);
    const Vector w = lmo(region, -v);
    return std::max(0.0, 0.5 * (v - w).squaredNorm());
  }
  const auto& p = std::get<BudgetPolytope>(region);
  return p.dim == 1 ? 0.5 * p.budget * p.budget : p.budget * p.budget;
}

}  // namespace drmax
