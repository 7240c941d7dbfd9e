#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "drmax/objective.hpp"

namespace drmax::bench {

/// One run description. Fields beyond these are rejected.
///   problem    "summarization" | "movierec" | "movierec_synthetic"
///   solver     "greedy" | "mirror_prox" | "both"
///   T          iterations
///   schedule   "fixed" (1/(2 sqrt T), summarization only) | "theory"
///   theta, eps DRO radius and regularization (movie-rec)
///   delta      inner-solve gap target (movie-rec)
///   seed       instance seed
///   output_dir where CSVs and summary.json go
/// Optional: k (items), N, m_cap, budget, ratings (path), batch, impute
/// (value for missing ratings, default 1).
struct ExperimentConfig {
  std::string problem = "summarization";
  std::string solver = "both";
  int T = 50;
  std::string schedule = "fixed";
  double theta = 0.2;
  double eps = 0.01;
  double delta = 1e-5;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  int k = 50;
  int N = 10;
  int m_cap = 50;
  int budget = 5;
  std::string ratings;
  int batch = 0;
  double impute = 1.0;
};

/// Validates against the schema; errors name the offending field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// "iteration,value,seconds" with 17 significant digits.
std::string trajectory_csv(const std::vector<TrajectoryPoint>& rows);
/// Same rows without the timing column, for reproducibility checks.
std::string trajectory_csv_untimed(const std::vector<TrajectoryPoint>& rows);

struct ExperimentResult {
  std::vector<std::string> files;
  nlohmann::json summary;
};

/// Runs the configured solver(s) and writes <solver>.csv plus summary.json into
/// output_dir. With dry_run only validates and writes nothing.
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool dry_run = false);

}  // namespace drmax::bench
