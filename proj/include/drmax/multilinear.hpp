#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "drmax/core.hpp"

namespace drmax {

/// Membership mask over the ground set {0, ..., m-1}.
using Subset = std::vector<char>;

/// Nonnegative set function on a ground set of size m with f(empty) = 0.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual int ground_size() const = 0;
  virtual double eval(const Subset& s) const = 0;
  virtual std::string name() const = 0;
};

/// f(S) = max_{j in S} r_j, f(empty) = 0.
class CoverageFunction final : public SetFunction {
 public:
  explicit CoverageFunction(Vector weights);
  int ground_size() const override { return static_cast<int>(r_.size()); }
  double eval(const Subset& s) const override;
  std::string name() const override { return "coverage"; }
  const Vector& weights() const { return r_; }

 private:
  Vector r_;
};

/// f(S) = sum_{j in S} w_j.
class ModularFunction final : public SetFunction {
 public:
  explicit ModularFunction(Vector weights);
  int ground_size() const override { return static_cast<int>(w_.size()); }
  double eval(const Subset& s) const override;
  std::string name() const override { return "modular"; }

 private:
  Vector w_;
};

/// f(S) = sum_i max_{j in S} W(i, j): one coverage term per row.
class FacilityLocation final : public SetFunction {
 public:
  explicit FacilityLocation(Matrix weights);
  int ground_size() const override { return static_cast<int>(w_.cols()); }
  double eval(const Subset& s) const override;
  std::string name() const override { return "facility_location"; }

 private:
  Matrix w_;
};

constexpr int kEnumerationCap = 20;

/// Multilinear extension by full enumeration: sum_S f(S) prod_{i in S} x_i prod_{j notin S} (1 - x_j).
double exact_value(const SetFunction& f, const Vector& x);

/// dF/dx_j = F(x | x_j = 1) - F(x | x_j = 0), by enumeration.
double exact_partial(const SetFunction& f, const Vector& x, int j);
Vector exact_gradient(const SetFunction& f, const Vector& x);

struct ScalarEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct VectorEstimate {
  Vector mean;
  Vector std_error;
};

/// Mean of f(S) over B draws S ~ x. Sample b uses its own generator seeded by
/// splitmix64(seed ^ b), so results do not depend on how samples are sharded.
ScalarEstimate sampled_value(const SetFunction& f, const Vector& x, int batch, std::uint64_t seed);

/// Per coordinate, mean of f(S + j) - f(S - j) over B draws S ~ x.
VectorEstimate sampled_gradient(const SetFunction& f, const Vector& x, int batch,
                                std::uint64_t seed);

/// max_j f({j}): Lipschitz constant of the extension in l1 (bound on ||grad||_inf).
double lipschitz_constant(const SetFunction& f);

std::uint64_t splitmix64(std::uint64_t z);

/// Draw S ~ x (independent coordinates).
Subset sample_subset(const Vector& x, std::uint64_t seed);

// Closed forms for the coverage extension F_r(x) = E_{S ~ x}[max_{j in S} r_j],
// r >= 0. With r sorted decreasingly, F = sum_k r_(k) x_(k) prod_{l<k} (1 - x_(l)).

double coverage_value(const Vector& r, const Vector& x);
/// Gradient in x.
Vector coverage_gradient_x(const Vector& r, const Vector& x);
/// A subgradient in r (exact gradient where the r_j are distinct): the
/// probability that j is the first selected element in decreasing-r order.
Vector coverage_subgradient_r(const Vector& r, const Vector& x);

}  // namespace drmax
