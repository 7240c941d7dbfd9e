#pragma once

#include <random>
#include <string>
#include <variant>

#include "drmax/core.hpp"

namespace drmax {

/// {x : lower <= x <= upper}, with 0 <= lower.
struct Box {
  Vector lower;
  Vector upper;

  Box(Vector lo, Vector hi);
  static Box unit(Eigen::Index d) { return Box(Vector::Zero(d), Vector::Ones(d)); }
};

/// {x : 0 <= x_i <= cap, sum x = budget} (equality) or sum x <= budget.
struct CappedSimplex {
  double cap = 1.0;
  double budget = 1.0;
  bool equality = true;
  Eigen::Index dim = 1;

  CappedSimplex(Eigen::Index d, double cap, double budget, bool equality = true);
};

/// {x : x >= 0, sum x <= budget}. Down-closed, contains 0.
struct BudgetPolytope {
  double budget = 1.0;
  Eigen::Index dim = 1;

  BudgetPolytope(Eigen::Index d, double budget);
};

using FeasibleRegion = std::variant<Box, CappedSimplex, BudgetPolytope>;

Eigen::Index region_dim(const FeasibleRegion& region);
std::string describe(const FeasibleRegion& region);

bool contains(const FeasibleRegion& region, const Vector& x, double tol = 1e-9);

/// argmax_{v in region} <g, v>. Ties go to the lowest coordinate index.
Vector lmo(const FeasibleRegion& region, const Vector& g);

/// Euclidean projection. Capped simplices use bisection on the multiplier of the
/// sum constraint followed by an exact solve on the identified active set.
Vector project(const FeasibleRegion& region, const Vector& y);

/// Some R with sup_{x in region} ||x|| <= R. May over-estimate.
double radius(const FeasibleRegion& region, NormKind norm);

/// Random feasible point: uniform on the bounding box, then projected.
Vector sample_feasible(const FeasibleRegion& region, std::mt19937_64& rng);

}  // namespace drmax
