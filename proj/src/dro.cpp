#include "drmax/dro.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "drmax/greedy.hpp"
#include "drmax/multilinear.hpp"

namespace drmax {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Solution of min_{z in Z} sum_i p_i (<G_i, z_i> + c ||z_i - xi_i||^2).
struct Linearized {
  ScenarioBlock z;
  double kappa = 0.0;
  double value = 0.0;  // primal objective at z
  double lower = 0.0;  // Lagrangian dual value, a certified lower bound
};

ScenarioBlock clip_columns(const SampleBox& box, const Matrix& raw) {
  return raw.cwiseMax(box.lower.replicate(1, raw.cols())).cwiseMin(box.upper.replicate(1, raw.cols()));
}

double weighted_sq(const Vector& p, const Matrix& dev) {
  return (dev.colwise().squaredNorm().transpose().array() * p.array()).sum();
}

double weighted_dot(const Vector& p, const Matrix& a, const Matrix& b) {
  return ((a.array() * b.array()).colwise().sum().transpose() * p.array()).sum();
}

// For a fixed multiplier kappa = c + lambda the Lagrangian separates per
// coordinate, with minimizer clip(xi - G / (2 kappa)). The transport cost of that
// point decreases in kappa, so bisection finds the multiplier of the ball.
Linearized solve_linearized(const DroInstance& inst, const Matrix& G, double c) {
  const Matrix& xi = inst.samples;
  const Vector& p = inst.weights;
  const double radius_sq = inst.theta * inst.theta;
  auto point = [&](double kappa) { return clip_columns(inst.sample_box, xi - G / (2.0 * kappa)); };

  Linearized out;
  const double g_norm = std::sqrt(weighted_sq(p, G));
  if (g_norm == 0.0) {
    out.z = xi;
    out.kappa = c;
    return out;
  }
  double hi = c + g_norm / (2.0 * inst.theta);
  double lo = std::max(c, hi * 1e-16);
  if (weighted_sq(p, point(lo) - xi) <= radius_sq) {
    hi = lo;
  } else {
    for (int it = 0; it < 400 && hi > lo * (1.0 + 1e-15); ++it) {
      const double mid = c > 0.0 ? 0.5 * (lo + hi) : std::sqrt(lo * hi);
      if (weighted_sq(p, point(mid) - xi) <= radius_sq) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  out.kappa = hi;
  out.z = point(hi);
  const double lin = weighted_dot(p, G, out.z);
  const double dist = weighted_sq(p, out.z - xi);
  out.value = lin + c * dist;
  out.lower = lin + hi * dist - (hi - c) * radius_sq;
  out.lower = std::min(out.lower, out.value);
  return out;
}

struct BlockEval {
  double phi = 0.0;        // sum_i p_i f(x, z_i) + c ||z - xi||_p^2
  double intercept = 0.0;  // sum_i p_i (f(x, z_i) - <g_i, z_i>)
  Matrix grad;             // columns grad_zeta f(x, z_i)
};

BlockEval eval_block(const DroInstance& inst, const Vector& x, const ScenarioBlock& z, double c) {
  BlockEval e;
  e.grad.resize(z.rows(), z.cols());
  double fsum = 0.0;
  double lin = 0.0;
  for (Eigen::Index i = 0; i < z.cols(); ++i) {
    const Vector zi = z.col(i);
    const double fi = inst.coupling.value(x, zi);
    const Vector gi = inst.coupling.grad_zeta(x, zi);
    require(std::isfinite(fi) && gi.size() == z.rows() && gi.allFinite(),
            "inner_solve: coupling returned a non-finite value or gradient of wrong size");
    e.grad.col(i) = gi;
    fsum += inst.weights[i] * fi;
    lin += inst.weights[i] * gi.dot(zi);
  }
  e.phi = fsum + c * weighted_sq(inst.weights, z - inst.samples);
  e.intercept = fsum - lin;
  return e;
}

struct Progress {
  ScenarioBlock best;
  double upper = kInf;
  double lower = -kInf;
  void offer(const ScenarioBlock& z, double phi) {
    if (phi < upper) {
      upper = phi;
      best = z;
    }
  }
  // Convexity of f(x, .): the linearization at z plus the exact regularizer
  // minorizes the inner objective, and its minimum over Z is bounded below by
  // the Lagrangian dual value.
  void certify(const DroInstance& inst, const BlockEval& e, double c) {
    lower = std::max(lower, e.intercept + solve_linearized(inst, e.grad, c).lower);
  }
  double gap() const { return upper - lower; }
};

ScenarioBlock start_block(const DroInstance& inst, const InnerOptions& opts) {
  if (!opts.warm_start) return inst.samples;
  const ScenarioBlock& w = *opts.warm_start;
  require(w.rows() == inst.sample_dim() && w.cols() == inst.scenarios(),
          "inner_solve: warm start has the wrong shape");
  return in_Z(inst, w, 1e-12) ? w : project_Z(inst, w);
}

void solve_smooth(const DroInstance& inst, const Vector& x, double delta, double c,
                  const InnerOptions& opts, Progress& prog, int& iterations) {
  const double lambda = std::max(0.0, inst.coupling.zeta_smoothness(x));
  require(std::isfinite(lambda), "inner_solve: non-finite zeta smoothness");
  ScenarioBlock z = start_block(inst, opts);
  BlockEval ez = eval_block(inst, x, z, c);
  prog.offer(z, ez.phi);
  prog.certify(inst, ez, c);
  ScenarioBlock y = z;
  double t = 1.0;
  while (prog.gap() > delta) {
    if (iterations >= opts.max_iterations) return;
    ++iterations;
    // Composite step: linearize f at y, keep the regularizer and Z exact.
    const BlockEval ey = eval_block(inst, x, y, c);
    const ScenarioBlock next =
        solve_linearized(inst, ey.grad - lambda * (y - inst.samples), c + 0.5 * lambda).z;
    const BlockEval en = eval_block(inst, x, next, c);
    prog.offer(next, en.phi);
    prog.certify(inst, en, c);
    if (en.phi > ez.phi) {
      // Function-value restart.
      t = 1.0;
      y = z;
      continue;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - z);
    t = t_next;
    z = next;
    ez = en;
  }
}

// Cutting-plane scheme on the dual: the model is one aggregated affine minorant
// (a convex combination of linearizations), its minimizer over Z is the next
// query point, and the new cut is mixed in by an exact line search on the
// concave dual function.
void solve_nonsmooth(const DroInstance& inst, const Vector& x, double delta, double c,
                     const InnerOptions& opts, Progress& prog, int& iterations) {
  ScenarioBlock z = start_block(inst, opts);
  BlockEval e = eval_block(inst, x, z, c);
  prog.offer(z, e.phi);
  double b_agg = e.intercept;
  Matrix g_agg = e.grad;
  prog.certify(inst, e, c);
  while (prog.gap() > delta) {
    if (iterations >= opts.max_iterations) return;
    ++iterations;
    const Linearized model = solve_linearized(inst, g_agg, c);
    prog.lower = std::max(prog.lower, b_agg + model.lower);
    if (prog.gap() <= delta) break;
    const BlockEval cut = eval_block(inst, x, model.z, c);
    prog.offer(model.z, cut.phi);
    if (prog.gap() <= delta) break;

    const Matrix dg = cut.grad - g_agg;
    const double db = cut.intercept - b_agg;
    auto slope = [&](double gamma) {
      return db + weighted_dot(inst.weights, dg, solve_linearized(inst, g_agg + gamma * dg, c).z);
    };
    double gamma = 1.0;
    if (slope(1.0) < 0.0) {
      double lo = 0.0;
      double hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) >= 0.0 ? lo : hi) = mid;
      }
      gamma = lo;
    }
    b_agg += gamma * db;
    g_agg += gamma * dg;
  }
}

std::vector<double> weights_vec(const Vector& p) { return {p.data(), p.data() + p.size()}; }

}  // namespace

SampleBox::SampleBox(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
  require(lower.size() == upper.size() && lower.size() > 0, "SampleBox: bound size mismatch");
  require(!lower.hasNaN() && !upper.hasNaN(), "SampleBox: NaN bound");
  require((lower.array() <= upper.array()).all(), "SampleBox: lower > upper");
  require((lower.array() < kInf).all() && (upper.array() > -kInf).all(),
          "SampleBox: empty coordinate range");
}

SampleBox SampleBox::unbounded(Eigen::Index m) {
  return SampleBox(Vector::Constant(m, -kInf), Vector::Constant(m, kInf));
}

SampleBox SampleBox::uniform(Eigen::Index m, double lo, double hi) {
  return SampleBox(Vector::Constant(m, lo), Vector::Constant(m, hi));
}

DroInstance::DroInstance(Eigen::Index d, Matrix xi, Vector p, double th, double ep, SampleBox box,
                         Coupling f, DroConstants k, NormKind n)
    : dim(d),
      samples(std::move(xi)),
      weights(std::move(p)),
      theta(th),
      eps(ep),
      sample_box(std::move(box)),
      coupling(std::move(f)),
      constants(k),
      norm(n) {
  require(dim > 0, "DroInstance: decision dimension must be positive");
  require(samples.cols() > 0 && samples.rows() > 0, "DroInstance: need at least one sample");
  require(samples.allFinite(), "DroInstance: non-finite sample");
  require_dim(weights.size(), samples.cols(), "DroInstance weights");
  require((weights.array() > 0.0).all(), "DroInstance: weights must be positive");
  require(std::abs(weights.sum() - 1.0) <= 1e-12, "DroInstance: weights must sum to 1");
  require(theta > 0.0 && std::isfinite(theta), "DroInstance: theta must be positive");
  require(eps > 0.0 && std::isfinite(eps), "DroInstance: eps must be positive");
  require_dim(sample_box.dim(), samples.rows(), "DroInstance sample box");
  for (Eigen::Index i = 0; i < samples.cols(); ++i) {
    require((samples.col(i).array() >= sample_box.lower.array()).all() &&
                (samples.col(i).array() <= sample_box.upper.array()).all(),
            "DroInstance: sample " + std::to_string(i) + " lies outside the sample box");
  }
  require(coupling.value && coupling.grad_x && coupling.grad_zeta,
          "DroInstance: coupling is missing a callable");
  for (double v : {constants.L1, constants.lambda1, constants.lambda2, constants.L2}) {
    require(v >= 0.0 && std::isfinite(v), "DroInstance: constants must be finite and >= 0");
  }
}

double transport_cost(const DroInstance& inst, const ScenarioBlock& block) {
  require(block.rows() == inst.sample_dim() && block.cols() == inst.scenarios(),
          "scenario block has the wrong shape");
  return weighted_sq(inst.weights, block - inst.samples);
}

bool in_Z(const DroInstance& inst, const ScenarioBlock& block, double tol) {
  if (!block.allFinite()) return false;
  if (transport_cost(inst, block) > inst.theta * inst.theta + tol) return false;
  const auto& box = inst.sample_box;
  for (Eigen::Index i = 0; i < block.cols(); ++i) {
    if (((block.col(i) - box.lower).array() < -tol).any()) return false;
    if (((block.col(i) - box.upper).array() > tol).any()) return false;
  }
  return true;
}

double eval_R(const DroInstance& inst, const Vector& x, const ScenarioBlock& block) {
  require_dim(x.size(), inst.dim, "eval_R");
  require(in_Z(inst, block), "eval_R: scenario block outside Z");
  return eval_block(inst, x, block, inst.regularizer()).phi;
}

ScenarioBlock project_Z(const DroInstance& inst, const ScenarioBlock& raw) {
  require(raw.rows() == inst.sample_dim() && raw.cols() == inst.scenarios(),
          "project_Z: block has the wrong shape");
  require(raw.allFinite(), "project_Z: non-finite block");
  const Matrix& xi = inst.samples;
  const Vector& p = inst.weights;
  const double radius_sq = inst.theta * inst.theta;
  // KKT: column i is clip((y_i + lambda p_i xi_i) / (1 + lambda p_i)).
  auto point = [&](double lambda) {
    Matrix z(raw.rows(), raw.cols());
    for (Eigen::Index i = 0; i < raw.cols(); ++i) {
      z.col(i) = (raw.col(i) + lambda * p[i] * xi.col(i)) / (1.0 + lambda * p[i]);
    }
    return clip_columns(inst.sample_box, z);
  };
  ScenarioBlock z = point(0.0);
  if (weighted_sq(p, z - xi) <= radius_sq) return z;
  // Distance shrinks like 1 / (1 + lambda p_min)^2.
  const double d0 = std::sqrt(weighted_sq(p, raw - xi));
  double lo = 0.0;
  double hi = (d0 / inst.theta) / p.minCoeff() + 1.0;
  for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (weighted_sq(p, point(mid) - xi) <= radius_sq ? hi : lo) = mid;
  }
  return point(hi);
}

InnerResult inner_solve(const DroInstance& inst, const Vector& x, double delta_target,
                        const InnerOptions& opts) {
  require(delta_target > 0.0 && std::isfinite(delta_target), "inner_solve: delta must be > 0");
  require_dim(x.size(), inst.dim, "inner_solve");
  require(x.allFinite(), "inner_solve: non-finite x");
  const double c = opts.regularized ? inst.regularizer() : 0.0;

  InnerResult res;
  res.x = x;
  if (inst.coupling.zeta_independent) {
    res.block = inst.samples;
    res.r_value = res.lower_bound = inst.coupling.value(x, inst.samples.col(0));
    res.converged = true;
    return res;
  }

  Progress prog;
  int iterations = 0;
  if (inst.coupling.zeta_smoothness) {
    solve_smooth(inst, x, delta_target, c, opts, prog, iterations);
  } else {
    solve_nonsmooth(inst, x, delta_target, c, opts, prog, iterations);
  }
  res.block = prog.best;
  res.r_value = prog.upper;
  res.lower_bound = prog.lower;
  res.certified_gap = std::max(0.0, prog.gap());
  res.iterations = iterations;
  res.converged = prog.gap() <= delta_target;
  if (!res.converged) {
    throw Error("inner_solve: iteration cap " + std::to_string(opts.max_iterations) +
                " reached with certified gap " + std::to_string(res.certified_gap) +
                " > target " + std::to_string(delta_target));
  }
  return res;
}

double eval_H(const DroInstance& inst, const Vector& x, double delta_target) {
  return inner_solve(inst, x, delta_target).r_value;
}

Vector approx_grad_H(const DroInstance& inst, const Vector& x, const InnerResult& inner) {
  require_dim(x.size(), inst.dim, "approx_grad_H");
  require(inner.x.size() == x.size() && inner.x == x,
          "approx_grad_H: inner result was computed for a different x");
  if (inst.coupling.zeta_independent) return inst.coupling.grad_x(x, inst.samples.col(0));
  Vector g = Vector::Zero(inst.dim);
  for (Eigen::Index i = 0; i < inst.scenarios(); ++i) {
    const Vector gi = inst.coupling.grad_x(x, inner.block.col(i));
    require_dim(gi.size(), inst.dim, "coupling grad_x");
    g += inst.weights[i] * gi;
  }
  return g;
}

double gradient_error_bound(const DroInstance& inst, double delta) {
  return inst.constants.lambda2 * inst.theta * std::sqrt(2.0 * delta / inst.eps);
}

HolderModulus h_modulus(const DroInstance& inst) {
  const auto& k = inst.constants;
  std::vector<HolderTerm> terms;
  if (k.lambda1 > 0.0) terms.push_back({k.lambda1, 1.0});
  const double half = 2.0 * k.lambda2 * inst.theta * std::sqrt(k.L1 / inst.eps);
  if (half > 0.0) terms.push_back({half, 0.5});
  require(!terms.empty(), "h_modulus: lambda1 and lambda2 * L1 are both zero");
  return HolderModulus(std::move(terms));
}

Objective dro_objective(const DroInstance& inst, double delta_target,
                        std::shared_ptr<DroOracleState> state) {
  require(delta_target > 0.0, "dro_objective: delta must be > 0");
  if (!state) state = std::make_shared<DroOracleState>();
  auto solve = [inst, delta_target, state](const Vector& x) {
    InnerOptions opts;
    opts.warm_start = state->warm;
    InnerResult r = inner_solve(inst, x, delta_target, opts);
    state->warm = r.block;
    state->inner_iterations += r.iterations;
    return r;
  };
  Objective f;
  f.dim = inst.dim;
  f.name = "dro_H";
  f.norm = inst.norm;
  f.lipschitz = inst.constants.L1;
  f.delta = gradient_error_bound(inst, delta_target);
  const auto& k = inst.constants;
  if (k.lambda1 > 0.0 || k.lambda2 * k.L1 > 0.0) f.modulus = h_modulus(inst);
  f.value = [solve](const Vector& x) { return solve(x).r_value; };
  f.supergradient = [inst, solve, state](const Vector& x) {
    const int call = static_cast<int>(state->certificates.size()) + 1;
    try {
      InnerResult r = solve(x);
      state->certificates.push_back(r.certified_gap);
      return approx_grad_H(inst, x, r);
    } catch (const Error& e) {
      throw Error("DRO gradient oracle call " + std::to_string(call) + ": " + e.what());
    }
  };
  return f;
}

namespace {

void annotate(SolveReport& report, const DroInstance& inst, double delta,
              const DroOracleState& state) {
  report.certificates = state.certificates;
  report.config["delta"] = delta;
  report.config["theta"] = inst.theta;
  report.config["eps"] = inst.eps;
  report.config["scenarios"] = inst.scenarios();
  report.config["weights"] = weights_vec(inst.weights);
  report.config["coupling"] = inst.coupling.name;
  report.config["gradient_error_bound"] = gradient_error_bound(inst, delta);
  report.config["inner_iterations"] = state.inner_iterations;
  report.config["constants"] = {{"L1", inst.constants.L1},
                                {"lambda1", inst.constants.lambda1},
                                {"lambda2", inst.constants.lambda2},
                                {"L2", inst.constants.L2},
                                {"estimated", inst.constants.estimated}};
  if (inst.constants.estimated) report.notes.push_back("DRO constants estimated by sampling");
}

}  // namespace

SolveReport dro_continuous_greedy(const DroInstance& inst, const FeasibleRegion& region, int T,
                                  double delta_target) {
  auto state = std::make_shared<DroOracleState>();
  const Objective f = dro_objective(inst, delta_target, state);
  GreedyConfig cfg;
  cfg.iterations = T;
  SolveReport report = continuous_greedy(f, region, cfg);
  report.solver_name = "dro_continuous_greedy";
  annotate(report, inst, delta_target, *state);
  return report;
}

SolveReport dro_mirror_prox(const DroInstance& inst, const FeasibleRegion& region, int T,
                            double delta_target, const MirrorMap& map) {
  auto state = std::make_shared<DroOracleState>();
  const Objective f = dro_objective(inst, delta_target, state);
  MirrorProxConfig cfg;
  cfg.iterations = T;
  cfg.schedule = StepSchedule::theory(h_modulus(inst));
  cfg.mirror_map = map;
  SolveReport report = mirror_prox(f, region, cfg);
  report.solver_name = "dro_mirror_prox";
  annotate(report, inst, delta_target, *state);
  return report;
}

DroConstants estimate_constants(const Coupling& coupling, const FeasibleRegion& region,
                                const SampleBox& box, NormKind nk, int samples,
                                std::uint64_t seed) {
  require(box.bounded(), "estimate_constants: sample box must be bounded");
  require(samples > 0, "estimate_constants: samples must be positive");
  std::mt19937_64 rng(seed);
  auto draw_zeta = [&] {
    Vector z(box.dim());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      z[j] = std::uniform_real_distribution<double>(box.lower[j], box.upper[j])(rng);
    }
    return z;
  };
  DroConstants k;
  k.estimated = true;
  for (int s = 0; s < samples; ++s) {
    const Vector x1 = sample_feasible(region, rng);
    const Vector x2 = sample_feasible(region, rng);
    const Vector z1 = draw_zeta();
    const Vector z2 = draw_zeta();
    const Vector g11 = coupling.grad_x(x1, z1);
    k.L1 = std::max(k.L1, dual_norm(nk, g11));
    const double dx = norm(nk, x1 - x2);
    if (dx > 0.0) {
      k.lambda1 = std::max(k.lambda1, dual_norm(nk, g11 - coupling.grad_x(x2, z1)) / dx);
    }
    const double dz = (z1 - z2).norm();
    if (dz > 0.0) {
      k.lambda2 = std::max(k.lambda2, dual_norm(nk, g11 - coupling.grad_x(x1, z2)) / dz);
    }
    k.L2 = std::max(k.L2, coupling.grad_zeta(x1, z1).norm());
  }
  k.L1 *= 1.1;
  k.lambda1 *= 1.1;
  k.lambda2 *= 1.1;
  k.L2 *= 1.1;
  return k;
}

namespace couplings {

Coupling linear() {
  Coupling f;
  f.name = "linear";
  f.value = [](const Vector& x, const Vector& z) {
    require_dim(z.size(), x.size(), "linear coupling");
    return z.dot(x);
  };
  f.grad_x = [](const Vector&, const Vector& z) { return z; };
  f.grad_zeta = [](const Vector& x, const Vector&) { return x; };
  f.zeta_smoothness = [](const Vector&) { return 0.0; };
  return f;
}

Coupling decoupled(Vector c) {
  require(c.allFinite() && (c.array() >= 0.0).all(), "decoupled coupling: c must be >= 0");
  Coupling f;
  f.name = "decoupled";
  f.zeta_independent = true;
  f.value = [c](const Vector& x, const Vector&) { return c.dot(x); };
  f.grad_x = [c](const Vector&, const Vector&) { return c; };
  f.grad_zeta = [](const Vector&, const Vector& z) { return Vector::Zero(z.size()).eval(); };
  f.zeta_smoothness = [](const Vector&) { return 0.0; };
  return f;
}

Coupling quadratic(Matrix A, double a) {
  require(A.rows() == A.cols() && A.allFinite(), "quadratic coupling: A must be square");
  require((A.array() >= 0.0).all(), "quadratic coupling: A must be entrywise >= 0");
  require((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12, "quadratic coupling: A must be symmetric");
  require(a >= 0.0 && std::isfinite(a), "quadratic coupling: a must be >= 0");
  Coupling f;
  f.name = "quadratic";
  f.value = [A, a](const Vector& x, const Vector& z) {
    return (z.array() + 0.5 * a * z.array().square()).matrix().dot(x) - 0.5 * x.dot(A * x);
  };
  f.grad_x = [A, a](const Vector& x, const Vector& z) {
    return ((z.array() + 0.5 * a * z.array().square()).matrix() - A * x).eval();
  };
  f.grad_zeta = [a](const Vector& x, const Vector& z) {
    return ((1.0 + a * z.array()) * x.array()).matrix().eval();
  };
  f.zeta_smoothness = [a](const Vector& x) { return a * x.cwiseAbs().maxCoeff(); };
  return f;
}

DroConstants quadratic_constants(const Matrix& A, double a, double hi) {
  const double m = static_cast<double>(A.rows());
  DroConstants k;
  const double top = hi + 0.5 * a * hi * hi;
  k.L1 = std::sqrt(m) * std::max(top, A.rowwise().sum().maxCoeff());
  k.lambda1 = Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
  k.lambda2 = 1.0 + a * hi;
  k.L2 = std::sqrt(m) * (1.0 + a * hi);
  return k;
}

Coupling coverage() {
  Coupling f;
  f.name = "coverage";
  f.value = [](const Vector& x, const Vector& z) { return coverage_value(z, x); };
  f.grad_x = [](const Vector& x, const Vector& z) { return coverage_gradient_x(z, x); };
  f.grad_zeta = [](const Vector& x, const Vector& z) { return coverage_subgradient_r(z, x); };
  return f;
}

Coupling sampled_coverage(int batch, std::uint64_t seed) {
  require(batch > 0, "sampled_coverage: batch must be positive");
  Coupling f;
  f.name = "sampled_coverage";
  f.value = [batch, seed](const Vector& x, const Vector& z) {
    return sampled_value(CoverageFunction(z), x, batch, seed).mean;
  };
  f.grad_x = [batch, seed](const Vector& x, const Vector& z) {
    return sampled_gradient(CoverageFunction(z), x, batch, seed).mean;
  };
  f.grad_zeta = [batch, seed](const Vector& x, const Vector& z) {
    Vector g = Vector::Zero(z.size());
    for (int b = 0; b < batch; ++b) {
      const Subset s = sample_subset(x, seed ^ static_cast<std::uint64_t>(b));
      Eigen::Index arg = -1;
      for (Eigen::Index j = 0; j < z.size(); ++j) {
        if (s[static_cast<size_t>(j)] && (arg < 0 || z[j] > z[arg])) arg = j;
      }
      if (arg >= 0) g[arg] += 1.0 / batch;
    }
    return g;
  };
  return f;
}

}  // namespace couplings

}  // namespace drmax
