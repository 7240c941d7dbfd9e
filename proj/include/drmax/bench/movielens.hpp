#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drmax/dro.hpp"

namespace drmax::bench {

struct Rating {
  int user = 0;   ///< dense index into user_ids
  int movie = 0;  ///< dense index into movie_ids
  double rating = 0.0;
  std::int64_t timestamp = 0;
};

/// Ratings with users and movies re-indexed densely in increasing original-ID order.
struct RatingsData {
  std::vector<Rating> ratings;
  std::vector<std::int64_t> user_ids;
  std::vector<std::int64_t> movie_ids;

  int users() const { return static_cast<int>(user_ids.size()); }
  int movies() const { return static_cast<int>(movie_ids.size()); }
};

/// Builds the dense indexing from (user id, movie id, rating, timestamp) records.
RatingsData make_ratings(const std::vector<std::int64_t>& users,
                         const std::vector<std::int64_t>& movies,
                         const std::vector<double>& ratings,
                         const std::vector<std::int64_t>& timestamps);

/// Parses "UserID::MovieID::Rating::Timestamp" lines. Blank lines are skipped;
/// any malformed line or rating outside [1, 5] throws with its 1-based line number.
RatingsData parse_movielens(const std::string& path);
RatingsData parse_movielens_text(const std::string& text);

/// Writes the dataset back in "::" format, one line per rating in stored order.
std::string format_movielens(const RatingsData& data);

/// Compact binary form: magic "DRMXRAT1", u64 count, then per rating
/// (i64 user id, i64 movie id, f64 rating, i64 timestamp), little endian.
void write_ratings_binary(const RatingsData& data, const std::string& path);
RatingsData read_ratings_binary(const std::string& path);

/// Random ratings in {1, ..., 5}: every user rates each movie with probability `density`.
RatingsData synthetic_ratings(int users, int movies, double density, std::uint64_t seed);

struct MovieRecInstance {
  Matrix ratings;  ///< N x m, rows are the sampled users
  std::vector<std::int64_t> user_ids;
  std::vector<std::int64_t> movie_ids;
  int budget = 5;
  DroInstance dro;
  CappedSimplex region;
};

struct MovieRecOptions {
  int budget = 5;
  double impute = 1.0;
  /// 0 uses the closed-form coverage coupling, otherwise the sampled one with this batch.
  int sample_batch = 0;
};

/// Samples N users without replacement, keeps the m_cap most-rated movies (ties
/// to the lower movie id), fills missing ratings with `impute`, and builds a DRO
/// instance with uniform weights, Xi = [1, 5]^m, the l1 norm and the coverage
/// coupling. Constants are L1 = lambda1 = L2 = 5, lambda2 = 10 when ratings lie in
/// [1, 5], otherwise estimated.
MovieRecInstance build_movierec_dro(const RatingsData& data, int N, double theta, double eps,
                                    std::uint64_t seed, int m_cap,
                                    const MovieRecOptions& opts = {});

}  // namespace drmax::bench
