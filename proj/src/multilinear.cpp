#include "drmax/multilinear.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace drmax {
namespace {

void check_point(const SetFunction& f, const Vector& x, bool enumerate) {
  require_dim(x.size(), f.ground_size(), "multilinear extension");
  if (enumerate) {
    require(f.ground_size() <= kEnumerationCap,
            "exact multilinear extension: ground set larger than the enumeration cap (" +
                std::to_string(kEnumerationCap) + ")");
  }
  require(x.allFinite() && (x.array() >= 0.0).all() && (x.array() <= 1.0).all(),
          "multilinear extension: x must lie in the unit box");
}

Subset mask_to_subset(std::uint32_t mask, int m) {
  Subset s(static_cast<size_t>(m), 0);
  for (int i = 0; i < m; ++i) s[static_cast<size_t>(i)] = static_cast<char>((mask >> i) & 1u);
  return s;
}

double mask_probability(std::uint32_t mask, const Vector& x, int skip = -1) {
  double p = 1.0;
  for (int i = 0; i < x.size(); ++i) {
    if (i == skip) continue;
    p *= ((mask >> i) & 1u) ? x[i] : 1.0 - x[i];
  }
  return p;
}

std::vector<Eigen::Index> order_desc(const Vector& r) {
  std::vector<Eigen::Index> idx(static_cast<size_t>(r.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return r[a] > r[b]; });
  return idx;
}

}  // namespace

CoverageFunction::CoverageFunction(Vector weights) : r_(std::move(weights)) {
  require(r_.size() > 0, "CoverageFunction: empty ground set");
  require(r_.allFinite() && (r_.array() >= 0.0).all(), "CoverageFunction: weights must be >= 0");
}

double CoverageFunction::eval(const Subset& s) const {
  double best = 0.0;
  for (Eigen::Index j = 0; j < r_.size(); ++j) {
    if (s[static_cast<size_t>(j)]) best = std::max(best, r_[j]);
  }
  return best;
}

ModularFunction::ModularFunction(Vector weights) : w_(std::move(weights)) {
  require(w_.size() > 0, "ModularFunction: empty ground set");
  require(w_.allFinite() && (w_.array() >= 0.0).all(), "ModularFunction: weights must be >= 0");
}

double ModularFunction::eval(const Subset& s) const {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < w_.size(); ++j) {
    if (s[static_cast<size_t>(j)]) acc += w_[j];
  }
  return acc;
}

FacilityLocation::FacilityLocation(Matrix weights) : w_(std::move(weights)) {
  require(w_.size() > 0, "FacilityLocation: empty weight matrix");
  require(w_.allFinite() && (w_.array() >= 0.0).all(), "FacilityLocation: weights must be >= 0");
}

double FacilityLocation::eval(const Subset& s) const {
  Vector best = Vector::Zero(w_.rows());
  for (Eigen::Index j = 0; j < w_.cols(); ++j) {
    if (s[static_cast<size_t>(j)]) best = best.cwiseMax(w_.col(j));
  }
  return best.sum();
}

double exact_value(const SetFunction& f, const Vector& x) {
  check_point(f, x, true);
  const int m = f.ground_size();
  double acc = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    const double p = mask_probability(mask, x);
    if (p != 0.0) acc += p * f.eval(mask_to_subset(mask, m));
  }
  return acc;
}

double exact_partial(const SetFunction& f, const Vector& x, int j) {
  check_point(f, x, true);
  const int m = f.ground_size();
  require(j >= 0 && j < m, "exact_partial: coordinate out of range");
  const std::uint32_t bit = 1u << j;
  double acc = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (mask & bit) continue;
    const double p = mask_probability(mask, x, j);
    if (p == 0.0) continue;
    acc += p * (f.eval(mask_to_subset(mask | bit, m)) - f.eval(mask_to_subset(mask, m)));
  }
  return acc;
}

Vector exact_gradient(const SetFunction& f, const Vector& x) {
  Vector g(f.ground_size());
  for (int j = 0; j < f.ground_size(); ++j) g[j] = exact_partial(f, x, j);
  return g;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Subset sample_subset(const Vector& x, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Subset s(static_cast<size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) s[static_cast<size_t>(i)] = unif(rng) < x[i];
  return s;
}

ScalarEstimate sampled_value(const SetFunction& f, const Vector& x, int batch,
                             std::uint64_t seed) {
  require(batch > 0, "sampled_value: batch must be positive");
  check_point(f, x, false);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int b = 0; b < batch; ++b) {
    const double v = f.eval(sample_subset(x, seed ^ static_cast<std::uint64_t>(b)));
    sum += v;
    sum_sq += v * v;
  }
  ScalarEstimate est;
  est.mean = sum / batch;
  if (batch > 1) {
    const double var = std::max(0.0, (sum_sq - batch * est.mean * est.mean) / (batch - 1));
    est.std_error = std::sqrt(var / batch);
  }
  return est;
}

VectorEstimate sampled_gradient(const SetFunction& f, const Vector& x, int batch,
                                std::uint64_t seed) {
  require(batch > 0, "sampled_gradient: batch must be positive");
  check_point(f, x, false);
  const Eigen::Index m = x.size();
  Vector sum = Vector::Zero(m);
  Vector sum_sq = Vector::Zero(m);
  for (int b = 0; b < batch; ++b) {
    Subset s = sample_subset(x, seed ^ static_cast<std::uint64_t>(b));
    for (Eigen::Index j = 0; j < m; ++j) {
      const char saved = s[static_cast<size_t>(j)];
      s[static_cast<size_t>(j)] = 1;
      const double with = f.eval(s);
      s[static_cast<size_t>(j)] = 0;
      const double without = f.eval(s);
      s[static_cast<size_t>(j)] = saved;
      const double diff = with - without;
      sum[j] += diff;
      sum_sq[j] += diff * diff;
    }
  }
  VectorEstimate est;
  est.mean = sum / batch;
  est.std_error = Vector::Zero(m);
  if (batch > 1) {
    const Vector var =
        ((sum_sq - batch * est.mean.cwiseAbs2()) / (batch - 1)).cwiseMax(0.0);
    est.std_error = (var / batch).cwiseSqrt();
  }
  return est;
}

double lipschitz_constant(const SetFunction& f) {
  const int m = f.ground_size();
  double best = 0.0;
  Subset s(static_cast<size_t>(m), 0);
  for (int j = 0; j < m; ++j) {
    s[static_cast<size_t>(j)] = 1;
    best = std::max(best, f.eval(s));
    s[static_cast<size_t>(j)] = 0;
  }
  return best;
}

double coverage_value(const Vector& r, const Vector& x) {
  require_dim(x.size(), r.size(), "coverage_value");
  double none_yet = 1.0;  // P(no element ranked above k was selected)
  double acc = 0.0;
  for (auto k : order_desc(r)) {
    acc += r[k] * x[k] * none_yet;
    none_yet *= 1.0 - x[k];
  }
  return acc;
}

Vector coverage_gradient_x(const Vector& r, const Vector& x) {
  require_dim(x.size(), r.size(), "coverage_gradient_x");
  const auto order = order_desc(r);
  const size_t m = order.size();
  // prefix[k] = prod_{l<k} (1 - x_(l)); tail[k] = E[value from ranks > k | none of ranks <= k picked].
  std::vector<double> prefix(m + 1, 1.0);
  for (size_t k = 0; k < m; ++k) prefix[k + 1] = prefix[k] * (1.0 - x[order[k]]);
  std::vector<double> tail(m, 0.0);
  for (size_t k = m - 1; k-- > 0;) {
    const auto nxt = order[k + 1];
    tail[k] = r[nxt] * x[nxt] + (1.0 - x[nxt]) * tail[k + 1];
  }
  Vector g(static_cast<Eigen::Index>(m));
  for (size_t k = 0; k < m; ++k) g[order[k]] = prefix[k] * (r[order[k]] - tail[k]);
  return g;
}

Vector coverage_subgradient_r(const Vector& r, const Vector& x) {
  require_dim(x.size(), r.size(), "coverage_subgradient_r");
  Vector w(r.size());
  double none_yet = 1.0;
  for (auto k : order_desc(r)) {
    w[k] = x[k] * none_yet;
    none_yet *= 1.0 - x[k];
  }
  return w;
}

}  // namespace drmax
