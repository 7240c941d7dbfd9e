// drmax: run experiments, validate configs, generate and ingest data.

#include <iostream>

#include <CLI11.hpp>

#include "drmax/bench/experiment.hpp"
#include "drmax/bench/movielens.hpp"
#include "drmax/bench/summarization.hpp"

int main(int argc, char** argv) {
  using namespace drmax::bench;
  CLI::App app{"DR-submodular maximization solvers and experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  std::string run_config;
  bool dry_run = false;
  run->add_option("config", run_config, "Config file")->required()->check(CLI::ExistingFile);
  run->add_flag("--dry-run", dry_run, "Validate the config and write nothing");

  auto* validate = app.add_subcommand("validate", "Check a JSON config against the schema");
  std::string validate_config;
  validate->add_option("config", validate_config, "Config file")->required()->check(CLI::ExistingFile);

  auto* gen = app.add_subcommand("gen-summarization", "Write a random summarization instance as JSON");
  int k = 50;
  std::uint64_t seed = 0;
  std::string gen_out;
  gen->add_option("--k", k, "Number of items")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", gen_out, "Output path")->required();

  auto* ingest = app.add_subcommand("ingest-movielens", "Convert ratings.dat to the binary format");
  std::string ratings_path, ingest_out;
  ingest->add_option("--ratings", ratings_path, "MovieLens ratings.dat")->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", ingest_out, "Output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto cfg = load_config(run_config);
      const auto res = run_experiment(cfg, dry_run);
      if (dry_run) {
        std::cout << "config ok: " << run_config << " (dry run, nothing written)\n";
      } else {
        for (const auto& f : res.files) std::cout << "wrote " << f << '\n';
        for (const auto& r : res.summary["runs"]) {
          std::cout << r["solver"].get<std::string>() << ": final value "
                    << r["final_value"].get<double>() << '\n';
        }
      }
    } else if (*validate) {
      load_config(validate_config);
      std::cout << "config ok: " << validate_config << '\n';
    } else if (*gen) {
      save_summarization(gen_summarization(k, seed), gen_out);
      std::cout << "wrote " << gen_out << '\n';
    } else if (*ingest) {
      const auto data = parse_movielens(ratings_path);
      write_ratings_binary(data, ingest_out);
      std::cout << "wrote " << ingest_out << ": " << data.ratings.size() << " ratings, "
                << data.users() << " users, " << data.movies() << " movies\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
