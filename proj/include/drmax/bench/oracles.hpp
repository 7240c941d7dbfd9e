#pragma once

#include <vector>

#include "drmax/dro.hpp"
#include "drmax/multilinear.hpp"
#include "drmax/objective.hpp"
#include "drmax/region.hpp"

namespace drmax::bench {

struct GridOptimum {
  double value = 0.0;
  Vector point;
  long evaluated = 0;
};

constexpr int kGridMaxDim = 6;

/// Best value over a grid of step `resolution` covering the region; equality
/// simplices grid the first d - 1 coordinates and solve for the last. A lower
/// bound on the optimum. Throws past kGridMaxDim or `max_points` grid points.
GridOptimum brute_force_opt_grid(const Objective& f, const FeasibleRegion& region, double resolution,
                                 long max_points = 20000000);

/// Exact grid optimum of b^T x + x^T A x / 2 over a box, for symmetric A with
/// A_dd <= 0: the last coordinate is maximized in closed form.
GridOptimum quadratic_grid_opt(const Vector& b, const Matrix& A, const Box& box, double resolution);

struct SetOptimum {
  double value = 0.0;
  std::vector<int> set;
  long evaluated = 0;
};

constexpr long kSetEnumerationCap = 1000000;

/// Enumerates all b-subsets in lexicographic order; the first maximizer wins.
SetOptimum brute_force_opt_sets(const SetFunction& f, int b);
/// Worst-case value H(1_S) of each b-subset, each from an inner solve with gap <= delta.
SetOptimum brute_force_opt_sets(const DroInstance& inst, int b, double delta = 1e-9);

/// n choose k as a double.
double binomial(int n, int k);

}  // namespace drmax::bench
