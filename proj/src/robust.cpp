#include "drmax/robust.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace drmax {
namespace {

constexpr double kTieTolerance = 1e-9;

void check_members(const std::vector<Objective>& members) {
  require(!members.empty(), "RobustObjective: empty member list");
  for (const auto& m : members) {
    require(m.dim == members.front().dim, "RobustObjective: members disagree on dimension");
  }
}

}  // namespace

RobustObjective::RobustObjective(std::vector<Objective> ms, double L, NormKind n)
    : members(std::move(ms)), lipschitz(L), norm(n) {
  check_members(members);
  require(L > 0.0 && std::isfinite(L), "RobustObjective: Lipschitz constant must be positive");
}

RobustObjective RobustObjective::with_estimated_lipschitz(std::vector<Objective> members,
                                                          const FeasibleRegion& region,
                                                          NormKind norm, int samples,
                                                          std::uint64_t seed) {
  check_members(members);
  std::mt19937_64 rng(seed);
  double sup = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vector x = sample_feasible(region, rng);
    for (const auto& m : members) sup = std::max(sup, dual_norm(norm, eval_supergradient(m, x)));
  }
  RobustObjective obj(std::move(members), std::max(1.1 * sup, 1e-12), norm);
  obj.lipschitz_estimated = true;
  return obj;
}

RobustValue robust_value(const RobustObjective& obj, const Vector& x) {
  require(!obj.members.empty(), "robust_value: empty member list");
  require(x.allFinite(), "robust_value: non-finite point");
  std::vector<double> vals;
  vals.reserve(obj.members.size());
  for (const auto& m : obj.members) vals.push_back(eval_value(m, x));
  RobustValue out;
  out.value = *std::min_element(vals.begin(), vals.end());
  for (size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] <= out.value + kTieTolerance) out.active.push_back(static_cast<int>(i));
  }
  return out;
}

Vector active_supergradient(const RobustObjective& obj, const Vector& x) {
  const auto rv = robust_value(obj, x);
  return eval_supergradient(obj.members[static_cast<size_t>(rv.active.front())], x);
}

Objective as_objective(const RobustObjective& obj) {
  Objective f;
  f.dim = obj.dim();
  f.name = "robust_min";
  f.norm = obj.norm;
  f.lipschitz = obj.lipschitz;
  f.modulus = HolderModulus::constant(2.0 * obj.lipschitz);
  f.value = [obj](const Vector& x) { return robust_value(obj, x).value; };
  f.supergradient = [obj](const Vector& x) { return active_supergradient(obj, x); };
  return f;
}

SolveReport robust_mirror_prox(const RobustObjective& obj, const FeasibleRegion& region, int T,
                               const MirrorMap& map) {
  const Objective f = as_objective(obj);
  MirrorProxConfig cfg;
  cfg.iterations = T;
  cfg.schedule = StepSchedule::theory(*f.modulus);
  cfg.mirror_map = map;
  auto report = mirror_prox(f, region, cfg);
  report.solver_name = "robust_mirror_prox";
  report.config["members"] = obj.members.size();
  report.config["lipschitz"] = obj.lipschitz;
  report.config["lipschitz_estimated"] = obj.lipschitz_estimated;
  if (obj.lipschitz_estimated) report.notes.push_back("Lipschitz constant estimated by sampling");
  return report;
}

}  // namespace drmax
