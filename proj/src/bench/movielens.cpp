#include "drmax/bench/movielens.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string_view>

namespace drmax::bench {
namespace {

static_assert(std::endian::native == std::endian::little, "binary ratings format assumes little endian");

constexpr char kMagic[8] = {'D', 'R', 'M', 'X', 'R', 'A', 'T', '1'};

[[noreturn]] void fail_line(size_t line, const std::string& what) {
  throw Error("movielens: line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (true) {
    const size_t next = line.find("::", pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 2;
  }
}

template <typename T>
T parse_number(std::string_view field, size_t line, const char* name) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    fail_line(line, std::string("invalid ") + name + " '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

int index_of(const std::vector<std::int64_t>& ids, std::int64_t id) {
  return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
}

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::string& path) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  require(static_cast<bool>(in), "read_ratings_binary: truncated file " + path);
  return v;
}

std::string format_rating(double r) {
  char buf[32];
  if (r == std::floor(r)) {
    std::snprintf(buf, sizeof buf, "%.0f", r);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", r);
  }
  return buf;
}

}  // namespace

RatingsData make_ratings(const std::vector<std::int64_t>& users,
                         const std::vector<std::int64_t>& movies, const std::vector<double>& ratings,
                         const std::vector<std::int64_t>& timestamps) {
  require(users.size() == movies.size() && users.size() == ratings.size() &&
              users.size() == timestamps.size(),
          "make_ratings: column lengths differ");
  RatingsData data;
  data.user_ids = sorted_unique(users);
  data.movie_ids = sorted_unique(movies);
  data.ratings.reserve(users.size());
  for (size_t i = 0; i < users.size(); ++i) {
    require(ratings[i] >= 1.0 && ratings[i] <= 5.0, "make_ratings: rating outside [1, 5]");
    data.ratings.push_back({index_of(data.user_ids, users[i]), index_of(data.movie_ids, movies[i]),
                            ratings[i], timestamps[i]});
  }
  return data;
}

RatingsData parse_movielens_text(const std::string& text) {
  std::vector<std::int64_t> users, movies, stamps;
  std::vector<double> ratings;
  std::istringstream in(text);
  std::string raw;
  size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = trim(raw);
    if (s.empty()) continue;
    const auto fields = split_fields(s);
    if (fields.size() != 4) {
      fail_line(line, "expected 4 '::'-separated fields, found " + std::to_string(fields.size()));
    }
    const auto user = parse_number<std::int64_t>(fields[0], line, "user id");
    const auto movie = parse_number<std::int64_t>(fields[1], line, "movie id");
    const auto rating = parse_number<double>(fields[2], line, "rating");
    const auto stamp = parse_number<std::int64_t>(fields[3], line, "timestamp");
    if (!(rating >= 1.0 && rating <= 5.0)) {
      fail_line(line, "rating " + std::string(fields[2]) + " outside [1, 5]");
    }
    users.push_back(user);
    movies.push_back(movie);
    ratings.push_back(rating);
    stamps.push_back(stamp);
  }
  return make_ratings(users, movies, ratings, stamps);
}

RatingsData parse_movielens(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "movielens: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_movielens_text(buf.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string format_movielens(const RatingsData& data) {
  std::string out;
  for (const auto& r : data.ratings) {
    out += std::to_string(data.user_ids[static_cast<size_t>(r.user)]) + "::" +
           std::to_string(data.movie_ids[static_cast<size_t>(r.movie)]) + "::" +
           format_rating(r.rating) + "::" + std::to_string(r.timestamp) + "\n";
  }
  return out;
}

void write_ratings_binary(const RatingsData& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "write_ratings_binary: cannot open " + path);
  out.write(kMagic, sizeof kMagic);
  put<std::uint64_t>(out, data.ratings.size());
  for (const auto& r : data.ratings) {
    put<std::int64_t>(out, data.user_ids[static_cast<size_t>(r.user)]);
    put<std::int64_t>(out, data.movie_ids[static_cast<size_t>(r.movie)]);
    put<double>(out, r.rating);
    put<std::int64_t>(out, r.timestamp);
  }
  require(static_cast<bool>(out), "write_ratings_binary: write failed for " + path);
}

RatingsData read_ratings_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "read_ratings_binary: cannot open " + path);
  char magic[sizeof kMagic];
  in.read(magic, sizeof magic);
  require(in && std::memcmp(magic, kMagic, sizeof kMagic) == 0,
          "read_ratings_binary: " + path + " is not a ratings file");
  const auto n = get<std::uint64_t>(in, path);
  std::vector<std::int64_t> users, movies, stamps;
  std::vector<double> ratings;
  for (std::uint64_t i = 0; i < n; ++i) {
    users.push_back(get<std::int64_t>(in, path));
    movies.push_back(get<std::int64_t>(in, path));
    ratings.push_back(get<double>(in, path));
    stamps.push_back(get<std::int64_t>(in, path));
  }
  return make_ratings(users, movies, ratings, stamps);
}

RatingsData synthetic_ratings(int users, int movies, double density, std::uint64_t seed) {
  require(users > 0 && movies > 0, "synthetic_ratings: sizes must be positive");
  require(density > 0.0 && density <= 1.0, "synthetic_ratings: density must lie in (0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::int64_t> us, ms, ts;
  std::vector<double> rs;
  std::int64_t clock = 978300000;
  for (int u = 1; u <= users; ++u) {
    for (int m = 1; m <= movies; ++m) {
      if (unif(rng) >= density) continue;
      us.push_back(u);
      ms.push_back(m);
      rs.push_back(1.0 + std::floor(5.0 * unif(rng)));
      ts.push_back(clock++);
    }
  }
  return make_ratings(us, ms, rs, ts);
}

MovieRecInstance build_movierec_dro(const RatingsData& data, int N, double theta, double eps,
                                    std::uint64_t seed, int m_cap, const MovieRecOptions& opts) {
  require(N >= 1, "build_movierec_dro: N must be >= 1");
  require(N <= data.users(), "build_movierec_dro: N = " + std::to_string(N) + " exceeds the " +
                                 std::to_string(data.users()) + " users in the data");
  require(m_cap >= 1, "build_movierec_dro: m_cap must be >= 1");
  const int m = std::min(m_cap, data.movies());
  require(opts.budget >= 1 && opts.budget <= m, "build_movierec_dro: need 1 <= budget <= m");

  std::vector<int> count(static_cast<size_t>(data.movies()), 0);
  for (const auto& r : data.ratings) ++count[static_cast<size_t>(r.movie)];
  std::vector<int> order(static_cast<size_t>(data.movies()));
  std::iota(order.begin(), order.end(), 0);
  // Dense movie index order equals id order, so a stable sort breaks ties by id.
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return count[static_cast<size_t>(a)] > count[static_cast<size_t>(b)]; });
  order.resize(static_cast<size_t>(m));
  std::vector<int> column(static_cast<size_t>(data.movies()), -1);
  for (int j = 0; j < m; ++j) column[static_cast<size_t>(order[static_cast<size_t>(j)])] = j;

  std::mt19937_64 rng(seed);
  std::vector<int> users(static_cast<size_t>(data.users()));
  std::iota(users.begin(), users.end(), 0);
  for (int i = 0; i < N; ++i) {
    std::uniform_int_distribution<int> pick(i, data.users() - 1);
    std::swap(users[static_cast<size_t>(i)], users[static_cast<size_t>(pick(rng))]);
  }
  users.resize(static_cast<size_t>(N));
  std::vector<int> row(static_cast<size_t>(data.users()), -1);
  for (int i = 0; i < N; ++i) row[static_cast<size_t>(users[static_cast<size_t>(i)])] = i;

  Matrix ratings = Matrix::Constant(N, m, opts.impute);
  for (const auto& r : data.ratings) {
    const int i = row[static_cast<size_t>(r.user)];
    const int j = column[static_cast<size_t>(r.movie)];
    if (i >= 0 && j >= 0) ratings(i, j) = r.rating;
  }

  const CappedSimplex region(m, 1.0, opts.budget, true);
  const double lo = std::min(1.0, ratings.minCoeff());
  const double hi = std::max(5.0, ratings.maxCoeff());
  SampleBox box = SampleBox::uniform(m, lo, hi);
  Coupling coupling = opts.sample_batch > 0 ? couplings::sampled_coverage(opts.sample_batch, seed)
                                            : couplings::coverage();
  DroConstants k;
  if (lo >= 1.0 && hi <= 5.0) {
    k.L1 = k.lambda1 = k.L2 = 5.0;
    k.lambda2 = 10.0;
  } else {
    k = estimate_constants(coupling, region, box, NormKind::L1, 2000, seed);
  }
  DroInstance dro(m, ratings.transpose(), Vector::Constant(N, 1.0 / N), theta, eps, box,
                  std::move(coupling), k, NormKind::L1);

  MovieRecInstance inst{std::move(ratings), {}, {}, opts.budget, std::move(dro), region};
  for (int u : users) inst.user_ids.push_back(data.user_ids[static_cast<size_t>(u)]);
  for (int j : order) inst.movie_ids.push_back(data.movie_ids[static_cast<size_t>(j)]);
  return inst;
}

}  // namespace drmax::bench
