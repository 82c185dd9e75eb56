#pragma once

#include <optional>
#include <vector>

#include "ranklab/common.hpp"

namespace ranklab {

enum class RankScheme {
  kCompetition,  // 1, 2, 2, 4
  kDense,        // 1, 2, 2, 3
  kOrdinal,      // 1, 2, 3, 4 (ties broken by index)
  kFractional,   // 1, 2.5, 2.5, 4
};

/// Converts scores to ranks, higher score = better = rank 1. Scores closer
/// than `tolerance` (absolute) are tied; closeness chains transitively, so a
/// run of scores each within tolerance of its neighbour forms one tie group.
std::vector<double> rank_scores(const std::vector<double>& scores,
                                RankScheme scheme = RankScheme::kCompetition,
                                double tolerance = 0.0);

/// All four rank schemes computed from one score vector.
struct RankViews {
  std::vector<double> competition, dense, ordinal, fractional;
};

RankViews rank_views(const std::vector<double>& scores, double tolerance = 0.0);

/// Kendall's tau-b between two rank (or score) vectors over the same items.
/// Tie-corrected; nullopt when either vector is fully tied (denominator 0).
std::optional<double> kendall_tau_b(const std::vector<double>& a, const std::vector<double>& b);

/// Mean absolute difference between two rank vectors.
double mean_abs_rank_error(const std::vector<double>& a, const std::vector<double>& b);

/// Jaccard overlap of the rank-1 item sets of the two vectors (items holding
/// the minimal rank on each side).
double top1_agreement(const std::vector<double>& rank_a, const std::vector<double>& rank_b);

}  // namespace ranklab
