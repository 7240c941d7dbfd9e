#pragma once

#include <memory>
#include <random>
#include <vector>

#include "drmax/dro.hpp"
#include "drmax/objective.hpp"
#include "drmax/region.hpp"

namespace drmax::testing {

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline Objective linear_objective(const Vector& c, NormKind norm = NormKind::L2) {
  Objective f;
  f.dim = c.size();
  f.name = "linear";
  f.norm = norm;
  f.lipschitz = dual_norm(norm, c);
  f.value = [c](const Vector& x) { return c.dot(x); };
  f.supergradient = [c](const Vector&) { return c; };
  return f;
}

/// F = b^T x + x^T A x / 2 with A symmetric; modulus lipschitz(||A||_2).
inline Objective quadratic_objective(const Matrix& A, const Vector& b) {
  Objective f;
  f.dim = b.size();
  f.name = "quadratic";
  f.norm = NormKind::L2;
  const double spectral = Eigen::SelfAdjointEigenSolver<Matrix>(A).eigenvalues().cwiseAbs().maxCoeff();
  if (spectral > 0.0) f.modulus = HolderModulus::lipschitz(spectral);
  f.value = [A, b](const Vector& x) { return b.dot(x) + 0.5 * x.dot(A * x); };
  f.supergradient = [A, b](const Vector& x) { return (b + A * x).eval(); };
  return f;
}

struct DrQuadratic {
  Matrix A;
  Vector b;
};

/// Symmetric A with entries in [-1, 0] and b_i >= sum_j |A_ij|, so the quadratic
/// is monotone and DR-submodular on the unit box with F(0) = 0.
inline DrQuadratic random_dr_quadratic(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix A(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) A(i, j) = A(j, i) = -u(rng);
  }
  Vector b(d);
  for (int i = 0; i < d; ++i) b[i] = A.row(i).cwiseAbs().sum() + u(rng);
  return {A, b};
}

/// Adds noise drawn uniformly from the dual-norm ball of radius delta (l2) to
/// every supergradient, and declares delta.
inline Objective with_gradient_noise(Objective f, double delta, std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  auto inner = f.supergradient;
  const Eigen::Index d = f.dim;
  f.delta = delta;
  f.supergradient = [inner, rng, delta, d](const Vector& x) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vector dir(d);
    for (Eigen::Index i = 0; i < d; ++i) dir[i] = n(*rng);
    const double r = delta * std::pow(u(*rng), 1.0 / static_cast<double>(d));
    return (inner(x) + r * dir / dir.norm()).eval();
  };
  return f;
}

/// Records every point at which the supergradient is queried.
inline Objective logging(Objective f, std::shared_ptr<std::vector<Vector>> log) {
  auto inner = f.supergradient;
  f.supergradient = [inner, log](const Vector& x) {
    log->push_back(x);
    return inner(x);
  };
  return f;
}

template <typename F>
Vector central_difference(F f, const Vector& x, double h = 1e-6) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

/// N = 1, m = d = 1, f = zeta x, xi = 2, theta = 1, eps = 0.1, Xi = R.
inline DroInstance one_dim_instance(double eps = 0.1) {
  Matrix xi(1, 1);
  xi << 2.0;
  DroConstants k;
  k.L1 = 3.0;  // |grad_x| = |zeta| <= 3 on the ball
  k.lambda1 = 0.0;
  k.lambda2 = 1.0;
  k.L2 = 1.0;
  return DroInstance(1, xi, vec({1.0}), 1.0, eps, SampleBox::unbounded(1), couplings::linear(), k);
}

/// Closed form of H for one_dim_instance: zeta* = clip(2 - x / (2c), [1, 3]).
inline double one_dim_H(double x, double eps = 0.1) {
  const double c = eps / 2.0;
  const double z = std::clamp(2.0 - x / (2.0 * c), 1.0, 3.0);
  return z * x + c * (z - 2.0) * (z - 2.0);
}

}  // namespace drmax::testing
