#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace drmax {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown for violated preconditions and solver failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NormKind { L1, L2, LInf };

constexpr NormKind dual(NormKind n) {
  switch (n) {
    case NormKind::L1:
      return NormKind::LInf;
    case NormKind::LInf:
      return NormKind::L1;
    case NormKind::L2:
      break;
  }
  return NormKind::L2;
}

std::string to_string(NormKind n);
NormKind norm_from_string(const std::string& s);

template <typename Derived>
typename Derived::Scalar norm(NormKind n, const Eigen::MatrixBase<Derived>& v) {
  switch (n) {
    case NormKind::L1:
      return v.template lpNorm<1>();
    case NormKind::LInf:
      return v.size() == 0 ? typename Derived::Scalar(0) : v.template lpNorm<Eigen::Infinity>();
    case NormKind::L2:
      break;
  }
  return v.norm();
}

/// Norm of `g` under dual(n), i.e. the operator norm of <g, .> on (R^d, ||.||_n).
template <typename Derived>
typename Derived::Scalar dual_norm(NormKind n, const Eigen::MatrixBase<Derived>& g) {
  return norm(dual(n), g);
}

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& v) {
  return v.allFinite();
}

void require(bool cond, const std::string& message);
void require_dim(Eigen::Index got, Eigen::Index expected, const char* what);

/// One term beta * z^sigma of a Hölder modulus.
struct HolderTerm {
  double beta = 1.0;
  double sigma = 1.0;
};

/// h(z) = sum_i beta_i z^{sigma_i}, beta_i > 0, sigma_i in [0, 1].
/// Uses 0^0 = 1 so a sigma = 0 term is a true constant.
class HolderModulus {
 public:
  explicit HolderModulus(std::vector<HolderTerm> terms);
  static HolderModulus constant(double beta) { return HolderModulus({{beta, 0.0}}); }
  static HolderModulus lipschitz(double beta) { return HolderModulus({{beta, 1.0}}); }

  double operator()(double z) const;
  double sigma_min() const;
  double beta_sum() const;
  const std::vector<HolderTerm>& terms() const { return terms_; }

  /// sum_i beta_i / (1 + sigma_i) z^{1 + sigma_i}: the integrated modulus.
  double integrated(double z) const;

 private:
  std::vector<HolderTerm> terms_;
};

double holder_eval(const HolderModulus& h, double z);

}  // namespace drmax
