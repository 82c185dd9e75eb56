#pragma once

#include <map>
#include <string>
#include <vector>

#include "ranklab/rank_layer.hpp"

namespace ranklab {

/// What every ranking method returns: per-system scores (higher = better),
/// the four rank views derived from them, method-specific diagnostics
/// (scalars stored as one-element vectors), and human-readable notes such
/// as convergence warnings.
struct MethodResult {
  std::vector<double> scores;
  RankViews ranks;
  std::map<std::string, std::vector<double>> diagnostics;
  std::vector<std::string> notes;
};

/// Builds a result from scores, deriving all rank views with the given
/// absolute tie tolerance.
inline MethodResult make_result(std::vector<double> scores, double tie_tolerance = 0.0) {
  MethodResult r;
  r.ranks = rank_views(scores, tie_tolerance);
  r.scores = std::move(scores);
  return r;
}

/// Tolerance used by methods whose scores come out of iterative optimizers:
/// relative 1e-9 on the largest score magnitude.
inline double optimizer_tie_tolerance(const std::vector<double>& scores) {
  double m = 0.0;
  for (double s : scores) m = std::max(m, std::abs(s));
  return 1e-9 * m;
}

}  // namespace ranklab
