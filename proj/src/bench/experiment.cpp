#include "drmax/bench/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "drmax/bench/movielens.hpp"
#include "drmax/bench/summarization.hpp"
#include "drmax/dro.hpp"
#include "drmax/greedy.hpp"
#include "drmax/mirror_prox.hpp"

namespace drmax::bench {
namespace {

using nlohmann::json;

const std::vector<std::string> kFields = {"problem", "solver", "T",     "schedule", "theta",
                                          "eps",     "delta",  "seed",  "output_dir", "k",
                                          "N",       "m_cap",  "budget", "ratings", "batch",
                                          "impute"};

// Line of the first occurrence of "name" in the raw text, 0 if unknown.
size_t field_line(const std::string& text, const std::string& name) {
  const size_t pos = text.find("\"" + name + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

[[noreturn]] void field_error(const std::string& text, const std::string& name, const std::string& what) {
  std::string msg = "config field '" + name + "': " + what;
  if (const size_t line = field_line(text, name)) msg += " (line " + std::to_string(line) + ")";
  throw Error(msg);
}

template <typename T>
void read_field(const json& j, const std::string& text, const std::string& name, T& out) {
  if (!j.contains(name)) return;
  try {
    out = j.at(name).get<T>();
  } catch (const json::exception&) {
    field_error(text, name, "wrong type");
  }
}

ExperimentConfig parse_with_text(const json& j, const std::string& text) {
  if (!j.is_object()) throw Error("config: top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(kFields.begin(), kFields.end(), key) == kFields.end()) {
      field_error(text, key, "unknown field");
    }
  }
  for (const char* name : {"problem", "solver", "T"}) {
    if (!j.contains(name)) throw Error(std::string("config field '") + name + "': missing");
  }
  ExperimentConfig c;
  read_field(j, text, "problem", c.problem);
  read_field(j, text, "solver", c.solver);
  read_field(j, text, "T", c.T);
  read_field(j, text, "schedule", c.schedule);
  read_field(j, text, "theta", c.theta);
  read_field(j, text, "eps", c.eps);
  read_field(j, text, "delta", c.delta);
  read_field(j, text, "seed", c.seed);
  read_field(j, text, "output_dir", c.output_dir);
  read_field(j, text, "k", c.k);
  read_field(j, text, "N", c.N);
  read_field(j, text, "m_cap", c.m_cap);
  read_field(j, text, "budget", c.budget);
  read_field(j, text, "ratings", c.ratings);
  read_field(j, text, "batch", c.batch);
  read_field(j, text, "impute", c.impute);

  auto one_of = [&](const std::string& name, const std::string& v, std::vector<std::string> allowed) {
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      field_error(text, name, "unsupported value '" + v + "'");
    }
  };
  one_of("problem", c.problem, {"summarization", "movierec", "movierec_synthetic"});
  one_of("solver", c.solver, {"greedy", "mirror_prox", "both"});
  one_of("schedule", c.schedule, {"fixed", "theory"});
  if (c.T < 3) field_error(text, "T", "must be >= 3");
  if (!(c.theta > 0.0)) field_error(text, "theta", "must be positive");
  if (!(c.eps > 0.0)) field_error(text, "eps", "must be positive");
  if (!(c.delta > 0.0)) field_error(text, "delta", "must be positive");
  if (c.k < 1) field_error(text, "k", "must be >= 1");
  if (c.N < 1) field_error(text, "N", "must be >= 1");
  if (c.m_cap < 1) field_error(text, "m_cap", "must be >= 1");
  if (c.budget < 1) field_error(text, "budget", "must be >= 1");
  if (c.batch < 0) field_error(text, "batch", "must be >= 0");
  if (!(c.impute >= 0.0) || !std::isfinite(c.impute)) field_error(text, "impute", "must be finite and >= 0");
  if (c.output_dir.empty()) field_error(text, "output_dir", "must be non-empty");
  if (c.problem == "movierec" && c.ratings.empty()) {
    throw Error("config field 'ratings': required for problem 'movierec'");
  }
  return c;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RatingsData load_ratings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot read ratings file " + path);
  char magic[8] = {};
  in.read(magic, sizeof magic);
  if (in && std::string(magic, 8) == "DRMXRAT1") return read_ratings_binary(path);
  return parse_movielens(path);
}

json report_summary(const SolveReport& r) {
  json s;
  s["solver"] = r.solver_name;
  s["final_value"] = r.value;
  s["solution"] = std::vector<double>(r.solution.data(), r.solution.data() + r.solution.size());
  s["config"] = r.config;
  s["notes"] = r.notes;
  if (!r.certificates.empty()) {
    s["certificates"] = {{"count", r.certificates.size()},
                         {"max", *std::max_element(r.certificates.begin(), r.certificates.end())}};
  }
  return s;
}

}  // namespace

ExperimentConfig parse_config(const json& j) { return parse_with_text(j, ""); }

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot read config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
  try {
    return parse_with_text(j, text);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

json to_json(const ExperimentConfig& c) {
  return {{"problem", c.problem}, {"solver", c.solver}, {"T", c.T},
          {"schedule", c.schedule}, {"theta", c.theta}, {"eps", c.eps},
          {"delta", c.delta}, {"seed", c.seed}, {"output_dir", c.output_dir},
          {"k", c.k}, {"N", c.N}, {"m_cap", c.m_cap},
          {"budget", c.budget}, {"ratings", c.ratings}, {"batch", c.batch},
          {"impute", c.impute}};
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& rows) {
  std::string out = "iteration,value,seconds\n";
  for (const auto& r : rows) {
    out += std::to_string(r.iteration) + "," + format_double(r.value) + "," + format_double(r.seconds) + "\n";
  }
  return out;
}

std::string trajectory_csv_untimed(const std::vector<TrajectoryPoint>& rows) {
  std::string out = "iteration,value\n";
  for (const auto& r : rows) out += std::to_string(r.iteration) + "," + format_double(r.value) + "\n";
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool dry_run) {
  ExperimentResult result;
  result.summary["config"] = to_json(cfg);
  if (dry_run) {
    result.summary["dry_run"] = true;
    return result;
  }
  const bool run_greedy = cfg.solver != "mirror_prox";
  const bool run_mp = cfg.solver != "greedy";
  std::vector<SolveReport> reports;

  if (cfg.problem == "summarization") {
    const auto inst = gen_summarization(cfg.k, cfg.seed);
    const Objective f = summarization_objective(inst, 10000, cfg.seed);
    result.summary["instance"] = {{"k", inst.k()}, {"budget", inst.region.budget},
                                  {"lipschitz_estimate", *f.lipschitz}};
    if (run_greedy) {
      GreedyConfig g;
      g.iterations = cfg.T;
      reports.push_back(continuous_greedy(f, inst.region, g));
    }
    if (run_mp) {
      MirrorProxConfig m;
      m.iterations = cfg.T;
      m.schedule = cfg.schedule == "fixed" ? StepSchedule::fixed(1.0 / (2.0 * std::sqrt(cfg.T)))
                                           : StepSchedule::theory(*f.modulus);
      reports.push_back(mirror_prox(f, inst.region, m));
    }
  } else {
    const RatingsData data = cfg.problem == "movierec" ? load_ratings(cfg.ratings)
                                                       : synthetic_ratings(200, 100, 0.3, cfg.seed);
    MovieRecOptions opts;
    opts.budget = cfg.budget;
    opts.sample_batch = cfg.batch;
    opts.impute = cfg.impute;
    const auto inst = build_movierec_dro(data, cfg.N, cfg.theta, cfg.eps, cfg.seed, cfg.m_cap, opts);
    result.summary["instance"] = {{"users", inst.user_ids}, {"movies", inst.movie_ids},
                                  {"budget", inst.budget}};
    if (run_greedy) reports.push_back(dro_continuous_greedy(inst.dro, inst.region, cfg.T, cfg.delta));
    if (run_mp) {
      reports.push_back(dro_mirror_prox(inst.dro, inst.region, cfg.T, cfg.delta));
      if (cfg.schedule == "fixed") {
        reports.back().notes.push_back("movie-rec mirror-prox always uses the theory schedule");
      }
    }
  }

  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  for (const auto& r : reports) {
    const fs::path path = fs::path(cfg.output_dir) / (r.solver_name + ".csv");
    std::ofstream out(path);
    require(static_cast<bool>(out), "cannot write " + path.string());
    out << trajectory_csv(r.values);
    result.files.push_back(path.string());
    result.summary["runs"].push_back(report_summary(r));
  }
  const fs::path summary = fs::path(cfg.output_dir) / "summary.json";
  std::ofstream out(summary);
  require(static_cast<bool>(out), "cannot write " + summary.string());
  out << result.summary.dump(2) << '\n';
  result.files.push_back(summary.string());
  return result;
}

}  // namespace drmax::bench
