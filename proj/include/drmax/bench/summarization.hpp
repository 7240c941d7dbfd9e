#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "drmax/objective.hpp"
#include "drmax/region.hpp"

namespace drmax::bench {

/// Concave piecewise-linear utility: 7x on [0, 1/2], 6x + 1/2 on [1/2, 3/4],
/// 5x + 5/4 on [3/4, 1].
double phi_eval(double x);
/// Slope on open pieces, midpoint of adjacent slopes at the breakpoints.
double phi_superderivative(double x);

/// F(x) = sum_{i,j} s_ij phi(x_j) - sum_{i,j} s_ij x_i x_j over
/// {0 <= x <= 1, sum x = budget}.
struct SummarizationInstance {
  Matrix s;
  CappedSimplex region;

  /// budget defaults to min(5, k).
  explicit SummarizationInstance(Matrix similarity, std::optional<double> budget = std::nullopt);
  int k() const { return static_cast<int>(s.rows()); }
};

/// i.i.d. uniform [0, 1] similarities, not symmetrized.
SummarizationInstance gen_summarization(int k, std::uint64_t seed);

double summarization_value(const SummarizationInstance& inst, const Vector& x);
/// Component l: colsum_l phi'(x_l) - sum_j (s_lj + s_jl) x_j.
Vector summarization_supergradient(const SummarizationInstance& inst, const Vector& x);

/// Oracle with declared modulus [(2 L, 0)], L estimated as 1.1 times the largest
/// l2 supergradient norm over `samples` feasible points.
Objective summarization_objective(const SummarizationInstance& inst, int samples = 10000,
                                  std::uint64_t seed = 0);

void save_summarization(const SummarizationInstance& inst, const std::string& path);
SummarizationInstance load_summarization(const std::string& path);

}  // namespace drmax::bench
