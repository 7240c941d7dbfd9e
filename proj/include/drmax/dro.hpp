#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "drmax/mirror_prox.hpp"
#include "drmax/objective.hpp"
#include "drmax/region.hpp"

namespace drmax {

/// The sample space Xi = {z : lower <= z <= upper}. Bounds may be infinite.
struct SampleBox {
  Vector lower;
  Vector upper;
  SampleBox(Vector lo, Vector hi);
  static SampleBox unbounded(Eigen::Index m);
  static SampleBox uniform(Eigen::Index m, double lo, double hi);
  Eigen::Index dim() const { return lower.size(); }
  bool bounded() const { return lower.allFinite() && upper.allFinite(); }
  Vector clip(const Vector& z) const { return z.cwiseMax(lower).cwiseMin(upper); }
};

/// f(x, zeta): monotone DR-submodular in x, convex in zeta.
struct Coupling {
  std::string name;
  std::function<double(const Vector& x, const Vector& zeta)> value;
  std::function<Vector(const Vector& x, const Vector& zeta)> grad_x;
  /// Gradient in zeta, or any subgradient where f(x, .) is not differentiable.
  std::function<Vector(const Vector& x, const Vector& zeta)> grad_zeta;
  /// Lipschitz constant (l2) of grad_zeta(x, .). Empty for nonsmooth couplings.
  std::function<double(const Vector& x)> zeta_smoothness;
  bool zeta_independent = false;
};

/// L1: Lipschitz constant of f(., zeta); lambda1: of grad_x f(., zeta);
/// lambda2: of grad_x f(x, .) (l2 in zeta, dual norm in x); L2: of f(x, .) in l2.
struct DroConstants {
  double L1 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double L2 = 0.0;
  bool estimated = false;
};

/// N scenarios xi^i (columns of `samples`, dimension m) with weights p_i, a
/// 2-Wasserstein radius theta and regularization eps.
struct DroInstance {
  Eigen::Index dim = 0;  ///< decision dimension d
  Matrix samples;
  Vector weights;
  double theta = 1.0;
  double eps = 1.0;
  SampleBox sample_box;
  Coupling coupling;
  DroConstants constants;
  NormKind norm = NormKind::L2;

  DroInstance(Eigen::Index dim, Matrix samples, Vector weights, double theta, double eps,
              SampleBox sample_box, Coupling coupling, DroConstants constants,
              NormKind norm = NormKind::L2);

  Eigen::Index sample_dim() const { return samples.rows(); }
  Eigen::Index scenarios() const { return samples.cols(); }
  /// eps / (2 theta^2), the weight of the transport regularizer.
  double regularizer() const { return eps / (2.0 * theta * theta); }
};

/// Column i is zeta^i.
using ScenarioBlock = Matrix;

/// sum_i p_i ||zeta^i - xi^i||^2.
double transport_cost(const DroInstance& inst, const ScenarioBlock& block);
/// block in Z: transport cost <= theta^2 (+ tol) and every column in Xi.
bool in_Z(const DroInstance& inst, const ScenarioBlock& block, double tol = 1e-9);

/// R(x, zeta) = sum_i p_i (f(x, zeta^i) + eps / (2 theta^2) ||xi^i - zeta^i||^2).
double eval_R(const DroInstance& inst, const Vector& x, const ScenarioBlock& block);

/// Euclidean projection onto Z, computed exactly by bisection on the multiplier
/// of the transport constraint (each column is then a box clip).
ScenarioBlock project_Z(const DroInstance& inst, const ScenarioBlock& raw);

struct InnerOptions {
  int max_iterations = 200000;
  /// false drops the eps-regularizer, giving the unregularized inner value F(x).
  bool regularized = true;
  std::optional<ScenarioBlock> warm_start;
};

struct InnerResult {
  Vector x;
  ScenarioBlock block;
  double r_value = 0.0;
  double lower_bound = 0.0;
  /// r_value - lower_bound: a certified bound on r_value - H(x).
  double certified_gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes R(x, .) over Z until the certified gap is at most delta_target.
/// Smooth couplings use accelerated composite gradient steps, nonsmooth ones an
/// aggregated cutting-plane scheme. Throws when the iteration cap is reached.
InnerResult inner_solve(const DroInstance& inst, const Vector& x, double delta_target,
                        const InnerOptions& opts = {});

/// r_value of inner_solve: overestimates H(x) by at most the certified gap.
double eval_H(const DroInstance& inst, const Vector& x, double delta_target);

/// sum_i p_i grad_x f(x, zeta^i) at the inner solution. Rejects results computed
/// for a different x.
Vector approx_grad_H(const DroInstance& inst, const Vector& x, const InnerResult& inner);

/// lambda2 theta sqrt(2 delta / eps): the gradient error implied by an inner gap delta.
double gradient_error_bound(const DroInstance& inst, double delta);

/// [(lambda1, 1), (2 lambda2 theta sqrt(L1 / eps), 1/2)], dropping zero terms.
HolderModulus h_modulus(const DroInstance& inst);

/// Shared mutable state of a DRO objective: warm start and gap log.
struct DroOracleState {
  std::optional<ScenarioBlock> warm;
  std::vector<double> certificates;
  long inner_iterations = 0;
};

/// H as a plain objective: value = eval_H, supergradient = approx_grad_H. The
/// declared gradient error is gradient_error_bound(delta_target).
Objective dro_objective(const DroInstance& inst, double delta_target,
                        std::shared_ptr<DroOracleState> state = nullptr);

SolveReport dro_continuous_greedy(const DroInstance& inst, const FeasibleRegion& region, int T,
                                  double delta_target);

SolveReport dro_mirror_prox(const DroInstance& inst, const FeasibleRegion& region, int T,
                            double delta_target, const MirrorMap& map = MirrorMap::euclidean());

/// Sampled estimates of L1, lambda1, lambda2, L2 (x from `region`, zeta uniform
/// on a bounded Xi), inflated by 1.1 and flagged as estimated.
DroConstants estimate_constants(const Coupling& coupling, const FeasibleRegion& region,
                                const SampleBox& box, NormKind norm, int samples = 2000,
                                std::uint64_t seed = 0);

namespace couplings {

/// f = <zeta, x>, with m = d.
Coupling linear();
/// f = <c, x>, independent of zeta.
Coupling decoupled(Vector c);
/// f = sum_j (zeta_j + a zeta_j^2 / 2) x_j - x^T A x / 2 with A >= 0 entrywise, a >= 0.
Coupling quadratic(Matrix A, double a);
/// Constants of `quadratic` for x in the unit box and zeta in [lo, hi]^m (l2 norm).
DroConstants quadratic_constants(const Matrix& A, double a, double hi);
/// f(x, zeta) = E_{S ~ x}[max_{j in S} zeta_j], the coverage multilinear
/// extension with zeta as the weight vector, in closed form.
Coupling coverage();
/// Same coupling estimated with `batch` subsets drawn with a fixed seed: still
/// convex in zeta for each x.
Coupling sampled_coverage(int batch, std::uint64_t seed);

}  // namespace couplings

}  // namespace drmax
