#include "drmax/region.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace drmax {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<Eigen::Index> order_descending(const Vector& g) {
  std::vector<Eigen::Index> idx(static_cast<size_t>(g.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return g[a] > g[b]; });
  return idx;
}

double clipped_sum(const Vector& y, double tau, double cap) {
  return (y.array() - tau).max(0.0).min(cap).sum();
}

// Projection onto {0 <= x <= cap, sum x = budget}; cap may be +inf.
Vector project_capped_sum(const Vector& y, double cap, double budget) {
  const double ymin = y.minCoeff();
  const double ymax = y.maxCoeff();
  double lo = ymin - budget;
  if (std::isfinite(cap)) lo = std::min(lo, ymin - cap);
  double hi = ymax;  // clipped_sum(hi) == 0 <= budget
  for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (clipped_sum(y, mid, cap) >= budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double tau = 0.5 * (lo + hi);

  // Solve exactly on the active set identified by the bracket.
  double free_sum = 0.0;
  double fixed = 0.0;
  int n_free = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double v = y[i] - tau;
    if (v >= cap) {
      fixed += cap;
    } else if (v > 0.0) {
      free_sum += y[i];
      ++n_free;
    }
  }
  if (n_free > 0) {
    const double exact = (free_sum - (budget - fixed)) / n_free;
    if (std::abs(exact - tau) <= 1e-9 * (1.0 + std::abs(tau))) tau = exact;
  }
  return (y.array() - tau).max(0.0).min(cap).matrix();
}

}  // namespace

Box::Box(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
  require_dim(upper.size(), lower.size(), "Box");
  require(lower.size() > 0, "Box: dimension must be positive");
  require(lower.allFinite() && upper.allFinite(), "Box: bounds must be finite");
  require((lower.array() >= 0.0).all(), "Box: lower bound must be nonnegative");
  require((lower.array() <= upper.array()).all(), "Box: lower must not exceed upper");
}

CappedSimplex::CappedSimplex(Eigen::Index d, double c, double b, bool eq)
    : cap(c), budget(b), equality(eq), dim(d) {
  require(d > 0, "CappedSimplex: dimension must be positive");
  require(c > 0.0 && std::isfinite(c), "CappedSimplex: cap must be positive");
  require(b > 0.0, "CappedSimplex: budget must be positive");
  require(b <= c * static_cast<double>(d) * (1.0 + 1e-12),
          "CappedSimplex: infeasible region (budget > cap * dim)");
}

BudgetPolytope::BudgetPolytope(Eigen::Index d, double b) : budget(b), dim(d) {
  require(d > 0, "BudgetPolytope: dimension must be positive");
  require(b > 0.0 && std::isfinite(b), "BudgetPolytope: budget must be positive");
}

Eigen::Index region_dim(const FeasibleRegion& region) {
  return std::visit(overloaded{[](const Box& b) { return b.lower.size(); },
                               [](const CappedSimplex& c) { return c.dim; },
                               [](const BudgetPolytope& p) { return p.dim; }},
                    region);
}

std::string describe(const FeasibleRegion& region) {
  std::ostringstream os;
  std::visit(overloaded{[&](const Box& b) { os << "box(d=" << b.lower.size() << ")"; },
                        [&](const CappedSimplex& c) {
                          os << "capped_simplex(d=" << c.dim << ", cap=" << c.cap
                             << ", budget=" << c.budget << (c.equality ? ", eq)" : ", le)");
                        },
                        [&](const BudgetPolytope& p) {
                          os << "budget_polytope(d=" << p.dim << ", budget=" << p.budget << ")";
                        }},
             region);
  return os.str();
}

bool contains(const FeasibleRegion& region, const Vector& x, double tol) {
  if (x.size() != region_dim(region) || !x.allFinite()) return false;
  return std::visit(
      overloaded{[&](const Box& b) {
                   return ((x - b.lower).array() >= -tol).all() &&
                          ((b.upper - x).array() >= -tol).all();
                 },
                 [&](const CappedSimplex& c) {
                   if ((x.array() < -tol).any() || (x.array() > c.cap + tol).any()) return false;
                   const double s = x.sum();
                   return c.equality ? std::abs(s - c.budget) <= tol * (1.0 + c.budget)
                                     : s <= c.budget + tol * (1.0 + c.budget);
                 },
                 [&](const BudgetPolytope& p) {
                   return (x.array() >= -tol).all() && x.sum() <= p.budget + tol * (1.0 + p.budget);
                 }},
      region);
}

Vector lmo(const FeasibleRegion& region, const Vector& g) {
  require_dim(g.size(), region_dim(region), "lmo");
  return std::visit(
      overloaded{[&](const Box& b) -> Vector {
                   return (g.array() > 0.0).select(b.upper, b.lower);
                 },
                 [&](const CappedSimplex& c) -> Vector {
                   Vector v = Vector::Zero(c.dim);
                   double left = c.budget;
                   for (auto i : order_descending(g)) {
                     if (left <= 0.0) break;
                     if (!c.equality && g[i] <= 0.0) break;
                     v[i] = std::min(c.cap, left);
                     left -= v[i];
                   }
                   return v;
                 },
                 [&](const BudgetPolytope& p) -> Vector {
                   Vector v = Vector::Zero(p.dim);
                   Eigen::Index best = 0;
                   const double top = g.maxCoeff(&best);  // first maximal index
                   if (top > 0.0) v[best] = p.budget;
                   return v;
                 }},
      region);
}

Vector project(const FeasibleRegion& region, const Vector& y) {
  require_dim(y.size(), region_dim(region), "project");
  require(y.allFinite(), "project: non-finite input");
  return std::visit(
      overloaded{[&](const Box& b) -> Vector { return y.cwiseMax(b.lower).cwiseMin(b.upper); },
                 [&](const CappedSimplex& c) -> Vector {
                   if (!c.equality) {
                     Vector clipped = y.cwiseMax(0.0).cwiseMin(c.cap);
                     if (clipped.sum() <= c.budget) return clipped;
                   }
                   return project_capped_sum(y, c.cap, c.budget);
                 },
                 [&](const BudgetPolytope& p) -> Vector {
                   Vector clipped = y.cwiseMax(0.0);
                   if (clipped.sum() <= p.budget) return clipped;
                   return project_capped_sum(y, std::numeric_limits<double>::infinity(), p.budget);
                 }},
      region);
}

double radius(const FeasibleRegion& region, NormKind n) {
  return std::visit(overloaded{[&](const Box& b) { return norm(n, b.upper); },
                               [&](const CappedSimplex& c) {
                                 switch (n) {
                                   case NormKind::L1:
                                     return c.budget;
                                   case NormKind::LInf:
                                     return std::min(c.cap, c.budget);
                                   case NormKind::L2:
                                     break;
                                 }
                                 return std::sqrt(c.budget * c.cap);
                               },
                               [&](const BudgetPolytope& p) { return p.budget; }},
                    region);
}

Vector sample_feasible(const FeasibleRegion& region, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Eigen::Index d = region_dim(region);
  Vector u(d);
  for (Eigen::Index i = 0; i < d; ++i) u[i] = unif(rng);
  return std::visit(
      overloaded{[&](const Box& b) -> Vector {
                   return b.lower + (b.upper - b.lower).cwiseProduct(u);
                 },
                 [&](const CappedSimplex& c) -> Vector { return project(region, c.cap * u); },
                 [&](const BudgetPolytope& p) -> Vector {
                   // Uniform on the simplex corner via normalized exponentials.
                   Vector e = (-(u.array().max(1e-300)).log()).matrix();
                   const double extra = -std::log(std::max(unif(rng), 1e-300));
                   return p.budget * e / (e.sum() + extra);
                 }},
      region);
}

}  // namespace drmax
