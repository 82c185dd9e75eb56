#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ranklab/common.hpp"

namespace ranklab {

/// Outcome responses for L systems on M tasks over N repeated trials.
/// Entries are integer outcome levels in {0, ..., C}. Storage is row-major
/// with trial fastest: index(l, m, n) = (l*M + m)*N + n.
class ResponseTensor {
 public:
  ResponseTensor() : L_(0), M_(0), N_(0), C_(0) {}
  ResponseTensor(int L, int M, int N, int C);
  ResponseTensor(int L, int M, int N, int C, std::vector<int> data);

  int L() const { return L_; }
  int M() const { return M_; }
  int N() const { return N_; }
  int C() const { return C_; }

  int operator()(int l, int m, int n) const {
    return data_[(static_cast<std::size_t>(l) * M_ + m) * N_ + n];
  }
  int& operator()(int l, int m, int n) {
    return data_[(static_cast<std::size_t>(l) * M_ + m) * N_ + n];
  }

  const std::vector<int>& data() const { return data_; }

  /// Checks that every entry lies in {0..C}. Throws std::invalid_argument.
  void validate() const;

  /// Keeps only the first n trials.
  ResponseTensor truncate_trials(int n) const;

  bool operator==(const ResponseTensor&) const = default;

 private:
  int L_, M_, N_, C_;
  std::vector<int> data_;
};

/// 2-D matrix of outcome levels. Rows/columns meaning depends on the
/// promotion mode below.
using OutcomeMatrix = Grid<int>;

enum class PromotionMode {
  kSingleTrial,   // rows are systems: (L, M) -> (L, M, 1)
  kSingleSystem,  // rows are trials of one system: (N, M) -> (1, M, N)
};

/// Lifts a 2-D outcome matrix into the 3-D tensor form. The two natural
/// embeddings are ambiguous from the shape alone, so the caller picks one.
/// For kSingleSystem the matrix is laid out (M, N): task rows, trial columns.
ResponseTensor promote(const OutcomeMatrix& E, int C, PromotionMode mode);

/// Maps outcome levels {0..C} to real-valued credit.
struct Rubric {
  std::vector<double> weights;  // size C+1

  /// Throws on length mismatch; warns (does not throw) if weights are not
  /// non-decreasing in the level.
  void check(int C) const;

  double operator[](int level) const { return weights[static_cast<std::size_t>(level)]; }
};

/// Identity credit w[c] = c (the default rubric).
Rubric identity_rubric(int C);

/// Normalized credit w[c] = c / C.
Rubric normalized_rubric(int C);

/// Per-system, per-task mean rubric credit over trials:
/// out(l, m) = (1/N) sum_n w[R(l,m,n)].
Grid<double> trial_means(const ResponseTensor& R, const Rubric& w);

/// Per-system, per-task count of top-category outcomes (R == C), the
/// binarized success counts used by the pass family and IRT.
Grid<int> top_category_counts(const ResponseTensor& R);

/// Pairwise decisive comparisons pooled over tasks and trials.
/// wins(a, b) counts (m, n) cells where R(a,m,n) > R(b,m,n); ties(a, b)
/// counts cells with equal outcomes. wins(a,b) + wins(b,a) + ties(a,b) = M*N.
struct ComparisonSummary {
  Grid<long long> wins;
  Grid<long long> ties;
};

ComparisonSummary comparison_summary(const ResponseTensor& R);

/// A ballot is a weak ordering of the L systems: groups of tied systems from
/// best (highest outcome) to worst. One ballot per (task, trial) cell, in
/// task-major, trial-minor order. All ballots live in one flat arena.
struct BallotList {
  int L = 0;
  /// Concatenated system ids, best group first within each ballot.
  std::vector<int> items;
  /// Group sizes, concatenated across ballots.
  std::vector<int> group_sizes;
  /// Per ballot: [start, end) into group_sizes.
  std::vector<std::pair<int, int>> ballots;

  int count() const { return static_cast<int>(ballots.size()); }
};

BallotList ballots(const ResponseTensor& R);

/// Same data as ballots(); the leading group of each ballot is the winner
/// set, the remaining groups are the ordered loser groups.
inline BallotList winner_loser_sets(const ResponseTensor& R) { return ballots(R); }

/// Weighted comparison graph: edge(a, b) = wins(a, b) / (M*N).
Grid<double> comparison_graph(const ResponseTensor& R);

/// pref(a, b) = number of ballots ranking a strictly above b.
Grid<long long> preference_matrix(const BallotList& bl);

}  // namespace ranklab
