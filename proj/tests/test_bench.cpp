#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "drmax/bench/experiment.hpp"
#include "drmax/bench/movielens.hpp"
#include "drmax/bench/oracles.hpp"
#include "drmax/bench/summarization.hpp"
#include "support/test_objectives.hpp"

using namespace drmax;
using namespace drmax::bench;
using drmax::testing::vec;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(DRMAX_FIXTURE_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("drmax_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Drops the last CSV column (seconds).
std::string untimed(const fs::path& p) {
  std::string out;
  for (const auto& line : read_lines(p)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

}  // namespace

TEST(Phi, Examples) {
  EXPECT_EQ(phi_eval(0.0), 0.0);
  EXPECT_DOUBLE_EQ(phi_eval(0.5), 3.5);
  EXPECT_DOUBLE_EQ(phi_eval(0.75), 5.0);
  EXPECT_DOUBLE_EQ(phi_eval(1.0), 6.25);
  EXPECT_EQ(phi_superderivative(0.2), 7.0);
  EXPECT_EQ(phi_superderivative(0.5), 6.5);
  EXPECT_EQ(phi_superderivative(0.6), 6.0);
  EXPECT_EQ(phi_superderivative(0.75), 5.5);
  EXPECT_EQ(phi_superderivative(1.0), 5.0);
  EXPECT_THROW(phi_eval(1.1), Error);
  EXPECT_THROW(phi_superderivative(-0.1), Error);
}

TEST(Phi, ConcaveAndSuperderivativeIsSupergradient) {
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    for (int j = 0; j <= 100; ++j) {
      const double y = j / 100.0;
      ASSERT_LE(phi_eval(y), phi_eval(x) + phi_superderivative(x) * (y - x) + 1e-12);
    }
  }
}

TEST(Summarization, AllOnesExample) {
  const SummarizationInstance inst(Matrix::Ones(2, 2));
  EXPECT_EQ(inst.region.budget, 2.0);
  EXPECT_EQ(summarization_supergradient(inst, vec({0, 0})), vec({14, 14}));
  EXPECT_DOUBLE_EQ(summarization_value(inst, vec({1, 1})), 21.0);
  EXPECT_EQ(summarization_supergradient(inst, vec({1, 1})), vec({6, 6}));
}

TEST(Summarization, SupergradientMatchesFiniteDifferencesOffBreakpoints) {
  const auto inst = gen_summarization(6, 3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int k = 0; k < 50; ++k) {
    Vector x(6);
    for (int i = 0; i < 6; ++i) x[i] = u(rng);
    if (((x.array() - 0.5).abs() < 1e-3).any() || ((x.array() - 0.75).abs() < 1e-3).any()) continue;
    const Vector fd = drmax::testing::central_difference(
        [&](const Vector& w) { return summarization_value(inst, w); }, x, 1e-6);
    ASSERT_LE((fd - summarization_supergradient(inst, x)).norm(), 1e-5);
  }
}

TEST(Summarization, GeneratorIsDeterministic) {
  const auto a = gen_summarization(20, 9);
  const auto b = gen_summarization(20, 9);
  const auto c = gen_summarization(20, 10);
  EXPECT_EQ(a.s, b.s);
  EXPECT_NE(a.s, c.s);
  EXPECT_EQ(a.region.budget, 5.0);
  EXPECT_TRUE((a.s.array() >= 0.0).all() && (a.s.array() <= 1.0).all());
  const auto obj = summarization_objective(a, 500, 1);
  ASSERT_TRUE(obj.modulus.has_value());
  EXPECT_EQ(obj.modulus->terms()[0].sigma, 0.0);
  EXPECT_DOUBLE_EQ(obj.modulus->terms()[0].beta, 2.0 * *obj.lipschitz);
}

TEST(Summarization, SaveLoadRoundTrip) {
  const auto dir = scratch("summ");
  fs::create_directories(dir);
  const auto inst = gen_summarization(7, 2);
  save_summarization(inst, (dir / "s.json").string());
  const auto back = load_summarization((dir / "s.json").string());
  EXPECT_EQ(back.s, inst.s);
  EXPECT_EQ(back.region.budget, inst.region.budget);
}

TEST(MovieLens, ParserExamples) {
  const auto d = parse_movielens_text("1::2::3::4\n\n  10::2::5::7\r\n");
  ASSERT_EQ(d.ratings.size(), 2u);
  EXPECT_EQ(d.user_ids, (std::vector<std::int64_t>{1, 10}));
  EXPECT_EQ(d.movie_ids, (std::vector<std::int64_t>{2}));
  EXPECT_EQ(d.ratings[1].user, 1);
  EXPECT_EQ(d.ratings[1].rating, 5.0);
  EXPECT_EQ(d.ratings[1].timestamp, 7);
  EXPECT_THROW(parse_movielens_text("1::2::3"), Error);
  EXPECT_THROW(parse_movielens_text("1::2::0::4"), Error);
}

TEST(MovieLens, MalformedFixturesReportLine) {
  const std::vector<std::pair<std::string, int>> cases = {{"malformed_fields.dat", 3},
                                                          {"malformed_number.dat", 5},
                                                          {"malformed_rating.dat", 1},
                                                          {"malformed_empty_field.dat", 7},
                                                          {"malformed_trailing.dat", 4}};
  for (const auto& [name, line] : cases) {
    try {
      parse_movielens(fixture(name));
      ADD_FAILURE() << name << " parsed";
    } catch (const Error& e) {
      const std::string msg = e.what();
      EXPECT_NE(msg.find("line " + std::to_string(line) + ":"), std::string::npos) << msg;
      EXPECT_NE(msg.find(name), std::string::npos) << msg;
    }
  }
}

TEST(MovieLens, FixtureRoundTrips) {
  const auto d = parse_movielens(fixture("ratings_1000.dat"));
  ASSERT_EQ(d.ratings.size(), 1000u);
  const auto again = parse_movielens_text(format_movielens(d));
  ASSERT_EQ(again.ratings.size(), d.ratings.size());
  EXPECT_EQ(again.user_ids, d.user_ids);
  EXPECT_EQ(again.movie_ids, d.movie_ids);
  for (size_t i = 0; i < d.ratings.size(); ++i) {
    EXPECT_EQ(again.ratings[i].user, d.ratings[i].user);
    EXPECT_EQ(again.ratings[i].movie, d.ratings[i].movie);
    EXPECT_EQ(again.ratings[i].rating, d.ratings[i].rating);
    EXPECT_EQ(again.ratings[i].timestamp, d.ratings[i].timestamp);
  }

  const auto dir = scratch("bin");
  fs::create_directories(dir);
  write_ratings_binary(d, (dir / "r.bin").string());
  const auto bin = read_ratings_binary((dir / "r.bin").string());
  EXPECT_EQ(format_movielens(bin), format_movielens(d));
  EXPECT_THROW(read_ratings_binary(fixture("ratings_1000.dat")), Error);
}

TEST(MovieLens, BuildInstanceShapes) {
  const auto data = parse_movielens(fixture("ratings_1000.dat"));
  const auto one = build_movierec_dro(data, 1, 0.2, 0.01, 3, 8);
  EXPECT_EQ(one.ratings.rows(), 1);
  EXPECT_EQ(one.ratings.cols(), 8);
  EXPECT_EQ(one.dro.scenarios(), 1);
  EXPECT_EQ(one.dro.weights[0], 1.0);
  EXPECT_EQ(one.region.budget, 5.0);
  EXPECT_EQ(one.dro.norm, NormKind::L1);
  EXPECT_FALSE(one.dro.constants.estimated);
  EXPECT_EQ(one.dro.constants.lambda2, 10.0);

  const auto three = build_movierec_dro(data, 3, 0.2, 0.01, 3, 8);
  EXPECT_EQ(three.ratings.rows(), 3);
  EXPECT_EQ(three.dro.samples.rows(), 8);
  EXPECT_EQ(three.dro.samples.cols(), 3);
  EXPECT_TRUE((three.ratings.array() >= 1.0).all() && (three.ratings.array() <= 5.0).all());
  EXPECT_NE(three.user_ids[0], three.user_ids[1]);
  EXPECT_NE(three.user_ids[1], three.user_ids[2]);

  // Movies with the most ratings come first in the kept set; each is rated at least
  // as often as any dropped movie.
  std::map<std::int64_t, int> count;
  for (const auto& r : data.ratings) ++count[data.movie_ids[r.movie]];
  int kept_min = 1 << 30;
  for (auto id : three.movie_ids) kept_min = std::min(kept_min, count[id]);
  for (const auto& [id, c] : count) {
    if (std::find(three.movie_ids.begin(), three.movie_ids.end(), id) == three.movie_ids.end()) {
      EXPECT_LE(c, kept_min);
    }
  }
  EXPECT_THROW(build_movierec_dro(data, 1000, 0.2, 0.01, 3, 8), Error);

  MovieRecOptions zero;
  zero.impute = 0.0;
  const auto widened = build_movierec_dro(data, 3, 0.2, 0.01, 3, 8, zero);
  EXPECT_EQ(widened.dro.sample_box.lower[0], 0.0);
  EXPECT_TRUE(widened.dro.constants.estimated);
  EXPECT_EQ(widened.user_ids, three.user_ids);
}

TEST(Oracles, GridExamples) {
  Objective minlin;
  minlin.dim = 2;
  minlin.value = [](const Vector& x) { return std::min(3 * x[0], 3 * x[1]); };
  minlin.supergradient = [](const Vector&) { return Vector::Zero(2).eval(); };
  const auto g = brute_force_opt_grid(minlin, CappedSimplex(2, 1.0, 1.0), 0.01);
  EXPECT_NEAR(g.value, 1.5, 1e-12);
  EXPECT_NEAR(g.point[0], 0.5, 1e-12);

  Objective bump;
  bump.dim = 1;
  bump.value = [](const Vector& x) { return -(x[0] - 0.3) * (x[0] - 0.3); };
  bump.supergradient = [](const Vector& x) { return Vector::Constant(1, -2 * (x[0] - 0.3)); };
  const auto b = brute_force_opt_grid(bump, Box::unit(1), 0.1);
  EXPECT_NEAR(b.value, 0.0, 1e-15);
  EXPECT_NEAR(b.point[0], 0.3, 1e-12);
  EXPECT_EQ(b.evaluated, 11);
  EXPECT_THROW(brute_force_opt_grid(bump, Box::unit(1), 0.001), Error);
  EXPECT_THROW(brute_force_opt_grid(Objective{}, Box::unit(7), 0.5), Error);
}

TEST(Oracles, QuadraticGridMatchesGenericGrid) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto q = drmax::testing::random_dr_quadratic(3, s);
    const auto obj = drmax::testing::quadratic_objective(q.A, q.b);
    const auto generic = brute_force_opt_grid(obj, Box::unit(3), 0.05);
    const auto exact = quadratic_grid_opt(q.b, q.A, Box::unit(3), 0.05);
    EXPECT_GE(exact.value, generic.value - 1e-12);
    EXPECT_NEAR(exact.value, obj.value(exact.point), 1e-12);
  }
}

TEST(Oracles, SetExamples) {
  const CoverageFunction cov(vec({3, 1, 2}));
  const auto best = brute_force_opt_sets(cov, 2);
  EXPECT_EQ(best.value, 3.0);
  EXPECT_EQ(best.set, (std::vector<int>{0, 1}));
  EXPECT_EQ(best.evaluated, 3);
  EXPECT_EQ(binomial(30, 2), 435.0);

  const DroInstance dec(3, Matrix::Ones(3, 1), vec({1}), 0.3, 0.1, SampleBox::unbounded(3),
                        couplings::decoupled(vec({1, 3, 2})), {});
  const auto dro = brute_force_opt_sets(dec, 2);
  EXPECT_DOUBLE_EQ(dro.value, 5.0);
  EXPECT_EQ(dro.set, (std::vector<int>{1, 2}));
}

TEST(Experiment, SummarizationWritesBothTrajectories) {
  ExperimentConfig cfg;
  cfg.problem = "summarization";
  cfg.solver = "both";
  cfg.T = 50;
  cfg.k = 10;
  cfg.seed = 4;
  cfg.output_dir = scratch("summ_run").string();
  const auto res = run_experiment(cfg);
  ASSERT_EQ(res.files.size(), 3u);
  for (const auto* name : {"continuous_greedy.csv", "mirror_prox.csv"}) {
    const auto lines = read_lines(fs::path(cfg.output_dir) / name);
    ASSERT_EQ(lines.size(), 51u) << name;
    EXPECT_EQ(lines[0], "iteration,value,seconds");
    EXPECT_EQ(lines[1].substr(0, 2), "1,");
  }
  EXPECT_TRUE(fs::exists(fs::path(cfg.output_dir) / "summary.json"));

  const std::string first = untimed(fs::path(cfg.output_dir) / "mirror_prox.csv");
  run_experiment(cfg);
  EXPECT_EQ(untimed(fs::path(cfg.output_dir) / "mirror_prox.csv"), first);
}

TEST(Experiment, MovieRecGreedyWritesEveryIteration) {
  ExperimentConfig cfg;
  cfg.problem = "movierec";
  cfg.ratings = fixture("ratings_1000.dat");
  cfg.solver = "greedy";
  cfg.T = 300;
  cfg.N = 3;
  cfg.m_cap = 8;
  cfg.output_dir = scratch("mr_run").string();
  run_experiment(cfg);
  const auto lines = read_lines(fs::path(cfg.output_dir) / "dro_continuous_greedy.csv");
  EXPECT_EQ(lines.size(), 301u);
}

TEST(Experiment, DryRunWritesNothing) {
  ExperimentConfig cfg;
  cfg.output_dir = scratch("dry").string();
  const auto res = run_experiment(cfg, true);
  EXPECT_TRUE(res.files.empty());
  EXPECT_FALSE(fs::exists(cfg.output_dir));
}

TEST(Experiment, ConfigErrorsNameFieldAndLine) {
  const auto dir = scratch("cfg");
  fs::create_directories(dir);
  const auto path = (dir / "c.json").string();
  std::ofstream(path) << "{\n  \"problem\": \"summarization\",\n  \"solver\": \"greedy\",\n  \"T\": 10,\n"
                         "  \"stepsize\": 0.1\n}\n";
  try {
    load_config(path);
    FAIL() << "unknown field accepted";
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("'stepsize'"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 5"), std::string::npos) << msg;
  }
  EXPECT_THROW(parse_config(nlohmann::json{{"problem", "summarization"}, {"solver", "greedy"}}), Error);
  EXPECT_THROW(parse_config(nlohmann::json{{"problem", "summarization"}, {"solver", "greedy"}, {"T", 5},
                                          {"impute", -1}}),
               Error);
  EXPECT_THROW(parse_config(nlohmann::json{{"problem", "x"}, {"solver", "greedy"}, {"T", 5}}), Error);
  EXPECT_THROW(parse_config(nlohmann::json{{"problem", "summarization"}, {"solver", "greedy"}, {"T", "5"}}),
               Error);
  const auto ok = parse_config(nlohmann::json{{"problem", "summarization"}, {"solver", "greedy"}, {"T", 5}});
  EXPECT_EQ(parse_config(to_json(ok)).T, 5);
}
