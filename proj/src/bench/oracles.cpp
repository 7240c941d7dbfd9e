#include "drmax/bench/oracles.hpp"

#include <algorithm>
#include <limits>

namespace drmax::bench {
namespace {

std::vector<double> axis(double lo, double hi, double res) {
  std::vector<double> v;
  const auto steps = static_cast<long>(std::floor((hi - lo) / res + 1e-9));
  for (long i = 0; i <= steps; ++i) v.push_back(lo + static_cast<double>(i) * res);
  if (v.back() < hi - 1e-12) v.push_back(hi);
  return v;
}

// Calls visit(idx) for every index tuple of the product of `sizes`, last index fastest.
template <typename Visit>
void odometer(const std::vector<size_t>& sizes, Visit visit) {
  std::vector<size_t> idx(sizes.size(), 0);
  if (sizes.empty()) {
    visit(idx);
    return;
  }
  while (true) {
    visit(idx);
    size_t k = sizes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
      if (k == 0) return;
    }
  }
}

double product_size(const std::vector<std::vector<double>>& axes, size_t count) {
  double n = 1.0;
  for (size_t i = 0; i < count; ++i) n *= static_cast<double>(axes[i].size());
  return n;
}

template <typename F>
void for_each_combination(int m, int b, F f) {
  std::vector<int> c(static_cast<size_t>(b));
  for (int i = 0; i < b; ++i) c[static_cast<size_t>(i)] = i;
  while (true) {
    f(c);
    int i = b - 1;
    while (i >= 0 && c[static_cast<size_t>(i)] == m - b + i) --i;
    if (i < 0) return;
    ++c[static_cast<size_t>(i)];
    for (int j = i + 1; j < b; ++j) c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
  }
}

void check_sets(int m, int b) {
  require(b >= 0 && b <= m, "brute_force_opt_sets: need 0 <= b <= m");
  require(binomial(m, b) <= static_cast<double>(kSetEnumerationCap),
          "brute_force_opt_sets: C(" + std::to_string(m) + ", " + std::to_string(b) +
              ") exceeds the enumeration cap");
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

GridOptimum brute_force_opt_grid(const Objective& f, const FeasibleRegion& region, double resolution,
                                 long max_points) {
  const Eigen::Index d = region_dim(region);
  require(d <= kGridMaxDim, "brute_force_opt_grid: dimension " + std::to_string(d) +
                                " exceeds the cap of " + std::to_string(kGridMaxDim));
  require(resolution >= 0.01 - 1e-12, "brute_force_opt_grid: resolution must be >= 0.01");
  require_dim(f.dim, d, "brute_force_opt_grid");

  std::vector<std::vector<double>> axes;
  size_t free = static_cast<size_t>(d);
  double sum_cap = std::numeric_limits<double>::infinity();
  bool equality = false;
  double last_cap = 0.0;
  if (const auto* box = std::get_if<Box>(&region)) {
    for (Eigen::Index i = 0; i < d; ++i) axes.push_back(axis(box->lower[i], box->upper[i], resolution));
  } else if (const auto* cs = std::get_if<CappedSimplex>(&region)) {
    for (Eigen::Index i = 0; i < d; ++i) axes.push_back(axis(0.0, std::min(cs->cap, cs->budget), resolution));
    sum_cap = cs->budget;
    equality = cs->equality;
    last_cap = cs->cap;
    if (equality) free = static_cast<size_t>(d - 1);
  } else {
    const auto& bp = std::get<BudgetPolytope>(region);
    for (Eigen::Index i = 0; i < d; ++i) axes.push_back(axis(0.0, bp.budget, resolution));
    sum_cap = bp.budget;
  }
  require(product_size(axes, free) <= static_cast<double>(max_points),
          "brute_force_opt_grid: grid exceeds " + std::to_string(max_points) + " points");

  GridOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<size_t> sizes;
  for (size_t i = 0; i < free; ++i) sizes.push_back(axes[i].size());
  Vector x(d);
  odometer(sizes, [&](const std::vector<size_t>& idx) {
    double sum = 0.0;
    for (size_t i = 0; i < free; ++i) {
      x[static_cast<Eigen::Index>(i)] = axes[i][idx[i]];
      sum += x[static_cast<Eigen::Index>(i)];
    }
    if (equality) {
      const double last = sum_cap - sum;
      if (last < -1e-12 || last > last_cap + 1e-12) return;
      x[d - 1] = std::clamp(last, 0.0, last_cap);
    } else if (sum > sum_cap + 1e-12) {
      return;
    }
    ++best.evaluated;
    const double v = eval_value(f, x);
    if (v > best.value) {
      best.value = v;
      best.point = x;
    }
  });
  require(best.evaluated > 0, "brute_force_opt_grid: no feasible grid point");
  return best;
}

GridOptimum quadratic_grid_opt(const Vector& b, const Matrix& A, const Box& box, double resolution) {
  const Eigen::Index d = b.size();
  require(d >= 1 && A.rows() == d && A.cols() == d, "quadratic_grid_opt: shape mismatch");
  require_dim(box.lower.size(), d, "quadratic_grid_opt box");
  require((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12, "quadratic_grid_opt: A must be symmetric");
  require(A(d - 1, d - 1) <= 0.0, "quadratic_grid_opt: last diagonal entry must be <= 0");
  require(resolution > 0.0, "quadratic_grid_opt: resolution must be positive");

  std::vector<std::vector<double>> axes;
  for (Eigen::Index i = 0; i < d; ++i) axes.push_back(axis(box.lower[i], box.upper[i], resolution));
  const auto& last = axes.back();
  const double a_dd = A(d - 1, d - 1);

  // Partial sums over the first d - 1 coordinates, updated per changed coordinate.
  Vector xp = Vector::Zero(d);
  Vector u = Vector::Zero(d);  // A * xp
  double fp = 0.0;             // b^T xp + xp^T A xp / 2
  auto move = [&](Eigen::Index j, double to) {
    const double delta = to - xp[j];
    if (delta == 0.0) return;
    fp += delta * (b[j] + u[j]) + 0.5 * A(j, j) * delta * delta;
    u += delta * A.col(j);
    xp[j] = to;
  };

  GridOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<size_t> sizes;
  for (Eigen::Index i = 0; i + 1 < d; ++i) sizes.push_back(axes[static_cast<size_t>(i)].size());
  odometer(sizes, [&](const std::vector<size_t>& idx) {
    for (size_t i = 0; i < idx.size(); ++i) move(static_cast<Eigen::Index>(i), axes[i][idx[i]]);
    const double slope = b[d - 1] + u[d - 1];
    auto value_at = [&](double t) { return fp + t * slope + 0.5 * a_dd * t * t; };
    size_t pick = 0;
    if (a_dd < 0.0) {
      const double t_star = -slope / a_dd;
      const size_t hi = static_cast<size_t>(std::lower_bound(last.begin(), last.end(), t_star) - last.begin());
      pick = std::min(hi, last.size() - 1);
      if (hi > 0 && value_at(last[hi - 1]) >= value_at(last[pick])) pick = hi - 1;
    } else if (slope > 0.0) {
      pick = last.size() - 1;
    }
    best.evaluated += static_cast<long>(last.size());
    const double v = value_at(last[pick]);
    if (v > best.value) {
      best.value = v;
      best.point = xp;
      best.point[d - 1] = last[pick];
    }
  });
  best.value = b.dot(best.point) + 0.5 * best.point.dot(A * best.point);
  return best;
}

SetOptimum brute_force_opt_sets(const SetFunction& f, int b) {
  const int m = f.ground_size();
  check_sets(m, b);
  SetOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  for_each_combination(m, b, [&](const std::vector<int>& c) {
    Subset s(static_cast<size_t>(m), 0);
    for (int j : c) s[static_cast<size_t>(j)] = 1;
    const double v = f.eval(s);
    ++best.evaluated;
    if (v > best.value) {
      best.value = v;
      best.set = c;
    }
  });
  return best;
}

SetOptimum brute_force_opt_sets(const DroInstance& inst, int b, double delta) {
  const int m = static_cast<int>(inst.dim);
  check_sets(m, b);
  SetOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  for_each_combination(m, b, [&](const std::vector<int>& c) {
    Vector x = Vector::Zero(m);
    for (int j : c) x[j] = 1.0;
    const double v = inner_solve(inst, x, delta).r_value;
    ++best.evaluated;
    if (v > best.value) {
      best.value = v;
      best.set = c;
    }
  });
  return best;
}

}  // namespace drmax::bench
