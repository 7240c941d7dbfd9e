#include "drmax/core.hpp"

#include <algorithm>
#include <numeric>

namespace drmax {

std::string to_string(NormKind n) {
  switch (n) {
    case NormKind::L1:
      return "l1";
    case NormKind::LInf:
      return "linf";
    case NormKind::L2:
      break;
  }
  return "l2";
}

NormKind norm_from_string(const std::string& s) {
  if (s == "l1") return NormKind::L1;
  if (s == "l2") return NormKind::L2;
  if (s == "linf") return NormKind::LInf;
  throw Error("unknown norm '" + s + "' (expected l1, l2 or linf)");
}

void require(bool cond, const std::string& message) {
  if (!cond) throw Error(message);
}

void require_dim(Eigen::Index got, Eigen::Index expected, const char* what) {
  if (got != expected) {
    throw Error(std::string(what) + ": dimension mismatch (got " + std::to_string(got) +
                ", expected " + std::to_string(expected) + ")");
  }
}

HolderModulus::HolderModulus(std::vector<HolderTerm> terms) : terms_(std::move(terms)) {
  require(!terms_.empty(), "HolderModulus: needs at least one term");
  for (const auto& t : terms_) {
    require(std::isfinite(t.beta) && t.beta > 0.0, "HolderModulus: beta must be positive");
    require(t.sigma >= 0.0 && t.sigma <= 1.0, "HolderModulus: sigma must lie in [0, 1]");
  }
}

double HolderModulus::operator()(double z) const {
  require(z >= 0.0, "holder_eval: z must be nonnegative");
  double acc = 0.0;
  for (const auto& t : terms_) {
    // std::pow(0, 0) == 1, which is the convention we want.
    acc += t.beta * std::pow(z, t.sigma);
  }
  return acc;
}

double HolderModulus::sigma_min() const {
  return std::min_element(terms_.begin(), terms_.end(),
                          [](const auto& a, const auto& b) { return a.sigma < b.sigma; })
      ->sigma;
}

double HolderModulus::beta_sum() const {
  return std::accumulate(terms_.begin(), terms_.end(), 0.0,
                         [](double acc, const auto& t) { return acc + t.beta; });
}

double HolderModulus::integrated(double z) const {
  require(z >= 0.0, "HolderModulus::integrated: z must be nonnegative");
  double acc = 0.0;
  for (const auto& t : terms_) acc += t.beta / (1.0 + t.sigma) * std::pow(z, 1.0 + t.sigma);
  return acc;
}

double holder_eval(const HolderModulus& h, double z) { return h(z); }

}  // namespace drmax
