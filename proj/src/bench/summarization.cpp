#include "drmax/bench/summarization.hpp"

#include <fstream>
#include <random>

#include <json.hpp>

namespace drmax::bench {
namespace {

void check_unit(double x, const char* what) {
  require(std::isfinite(x) && x >= 0.0 && x <= 1.0, std::string(what) + ": x must lie in [0, 1]");
}

}  // namespace

double phi_eval(double x) {
  check_unit(x, "phi_eval");
  if (x <= 0.5) return 7.0 * x;
  if (x <= 0.75) return 6.0 * x + 0.5;
  return 5.0 * x + 1.25;
}

double phi_superderivative(double x) {
  check_unit(x, "phi_superderivative");
  if (x < 0.5) return 7.0;
  if (x == 0.5) return 6.5;
  if (x < 0.75) return 6.0;
  if (x == 0.75) return 5.5;
  return 5.0;
}

SummarizationInstance::SummarizationInstance(Matrix similarity, std::optional<double> budget)
    : s(std::move(similarity)),
      region(s.rows() > 0 ? s.rows() : 1, 1.0,
             budget.value_or(std::min(5.0, static_cast<double>(std::max<Eigen::Index>(s.rows(), 1)))),
             true) {
  require(s.rows() >= 1 && s.rows() == s.cols(), "SummarizationInstance: s must be square, k >= 1");
  require(s.allFinite() && (s.array() >= 0.0).all() && (s.array() <= 1.0).all(),
          "SummarizationInstance: similarities must lie in [0, 1]");
}

SummarizationInstance gen_summarization(int k, std::uint64_t seed) {
  require(k >= 1, "gen_summarization: k must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix s(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) s(i, j) = unif(rng);
  }
  return SummarizationInstance(std::move(s));
}

double summarization_value(const SummarizationInstance& inst, const Vector& x) {
  require_dim(x.size(), inst.k(), "summarization_value");
  Vector phi(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) phi[j] = phi_eval(x[j]);
  const Vector colsum = inst.s.colwise().sum().transpose();
  return colsum.dot(phi) - x.dot(inst.s * x);
}

Vector summarization_supergradient(const SummarizationInstance& inst, const Vector& x) {
  require_dim(x.size(), inst.k(), "summarization_supergradient");
  Vector dphi(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) dphi[j] = phi_superderivative(x[j]);
  const Vector colsum = inst.s.colwise().sum().transpose();
  return colsum.cwiseProduct(dphi) - (inst.s + inst.s.transpose()) * x;
}

Objective summarization_objective(const SummarizationInstance& inst, int samples,
                                  std::uint64_t seed) {
  require(samples > 0, "summarization_objective: samples must be positive");
  std::mt19937_64 rng(seed);
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    sup = std::max(sup, summarization_supergradient(inst, sample_feasible(inst.region, rng)).norm());
  }
  const double L = 1.1 * sup;
  Objective f;
  f.dim = inst.k();
  f.name = "summarization";
  f.norm = NormKind::L2;
  f.lipschitz = L;
  f.modulus = HolderModulus::constant(2.0 * L);
  f.value = [inst](const Vector& x) { return summarization_value(inst, x); };
  f.supergradient = [inst](const Vector& x) { return summarization_supergradient(inst, x); };
  return f;
}

void save_summarization(const SummarizationInstance& inst, const std::string& path) {
  nlohmann::json j;
  j["k"] = inst.k();
  j["budget"] = inst.region.budget;
  std::vector<std::vector<double>> rows(static_cast<size_t>(inst.k()));
  for (int i = 0; i < inst.k(); ++i) {
    for (int c = 0; c < inst.k(); ++c) rows[static_cast<size_t>(i)].push_back(inst.s(i, c));
  }
  j["s"] = rows;
  std::ofstream out(path);
  require(static_cast<bool>(out), "save_summarization: cannot open " + path);
  out << j.dump(1) << '\n';
}

SummarizationInstance load_summarization(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "load_summarization: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("load_summarization: " + path + ": " + e.what());
  }
  const int k = j.at("k").get<int>();
  const auto rows = j.at("s").get<std::vector<std::vector<double>>>();
  require(static_cast<int>(rows.size()) == k, "load_summarization: row count differs from k");
  Matrix s(k, k);
  for (int i = 0; i < k; ++i) {
    require(static_cast<int>(rows[static_cast<size_t>(i)].size()) == k,
            "load_summarization: row " + std::to_string(i) + " has the wrong length");
    for (int c = 0; c < k; ++c) s(i, c) = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
  }
  return SummarizationInstance(std::move(s), j.at("budget").get<double>());
}

}  // namespace drmax::bench
