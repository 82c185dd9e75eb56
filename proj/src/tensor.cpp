#include "ranklab/tensor.hpp"

#include <algorithm>

namespace ranklab {

ResponseTensor::ResponseTensor(int L, int M, int N, int C)
    : L_(L), M_(M), N_(N), C_(C), data_(static_cast<std::size_t>(L) * M * N, 0) {
  if (L < 1 || M < 1 || N < 1 || C < 1)
    throw std::invalid_argument("response tensor needs L, M, N >= 1 and C >= 1");
}

ResponseTensor::ResponseTensor(int L, int M, int N, int C, std::vector<int> data)
    : L_(L), M_(M), N_(N), C_(C), data_(std::move(data)) {
  if (L < 1 || M < 1 || N < 1 || C < 1)
    throw std::invalid_argument("response tensor needs L, M, N >= 1 and C >= 1");
  if (data_.size() != static_cast<std::size_t>(L) * M * N)
    throw std::invalid_argument("response tensor data size does not match L*M*N");
  validate();
}

void ResponseTensor::validate() const {
  for (int x : data_)
    if (x < 0 || x > C_)
      throw std::invalid_argument("response tensor entry " + std::to_string(x) +
                                  " outside {0.." + std::to_string(C_) + "}");
}

ResponseTensor ResponseTensor::truncate_trials(int n) const {
  if (n < 1 || n > N_) throw std::invalid_argument("truncate_trials: n must be in [1, N]");
  ResponseTensor out(L_, M_, n, C_);
  for (int l = 0; l < L_; ++l)
    for (int m = 0; m < M_; ++m)
      for (int t = 0; t < n; ++t) out(l, m, t) = (*this)(l, m, t);
  return out;
}

ResponseTensor promote(const OutcomeMatrix& E, int C, PromotionMode mode) {
  if (E.rows() < 1 || E.cols() < 1) throw std::invalid_argument("promote: empty matrix");
  if (mode == PromotionMode::kSingleTrial) {
    ResponseTensor R(E.rows(), E.cols(), 1, C);
    for (int l = 0; l < E.rows(); ++l)
      for (int m = 0; m < E.cols(); ++m) R(l, m, 0) = E(l, m);
    R.validate();
    return R;
  }
  ResponseTensor R(1, E.rows(), E.cols(), C);
  for (int m = 0; m < E.rows(); ++m)
    for (int n = 0; n < E.cols(); ++n) R(0, m, n) = E(m, n);
  R.validate();
  return R;
}

void Rubric::check(int C) const {
  if (static_cast<int>(weights.size()) != C + 1)
    throw std::invalid_argument("rubric needs C+1 weights");
  for (double v : weights)
    if (!std::isfinite(v)) throw std::invalid_argument("rubric weight not finite");
  for (std::size_t i = 1; i < weights.size(); ++i)
    if (weights[i] < weights[i - 1]) {
      detail::warn("rubric weights are not non-decreasing in the outcome level");
      break;
    }
}

Rubric identity_rubric(int C) {
  Rubric w;
  w.weights.resize(static_cast<std::size_t>(C) + 1);
  for (int c = 0; c <= C; ++c) w.weights[c] = static_cast<double>(c);
  return w;
}

Rubric normalized_rubric(int C) {
  Rubric w;
  w.weights.resize(static_cast<std::size_t>(C) + 1);
  for (int c = 0; c <= C; ++c) w.weights[c] = static_cast<double>(c) / C;
  return w;
}

Grid<double> trial_means(const ResponseTensor& R, const Rubric& w) {
  w.check(R.C());
  Grid<double> out(R.L(), R.M(), 0.0);
  for (int l = 0; l < R.L(); ++l)
    for (int m = 0; m < R.M(); ++m) {
      double acc = 0.0;
      for (int n = 0; n < R.N(); ++n) acc += w[R(l, m, n)];
      out(l, m) = acc / R.N();
    }
  return out;
}

Grid<int> top_category_counts(const ResponseTensor& R) {
  Grid<int> out(R.L(), R.M(), 0);
  for (int l = 0; l < R.L(); ++l)
    for (int m = 0; m < R.M(); ++m)
      for (int n = 0; n < R.N(); ++n)
        if (R(l, m, n) == R.C()) ++out(l, m);
  return out;
}

ComparisonSummary comparison_summary(const ResponseTensor& R) {
  if (R.L() < 2) throw std::invalid_argument("comparison_summary: needs at least two systems");
  const int L = R.L();
  ComparisonSummary cs{Grid<long long>(L, L, 0), Grid<long long>(L, L, 0)};
  for (int m = 0; m < R.M(); ++m)
    for (int n = 0; n < R.N(); ++n)
      for (int a = 0; a < L; ++a)
        for (int b = a + 1; b < L; ++b) {
          const int ra = R(a, m, n), rb = R(b, m, n);
          if (ra > rb) {
            ++cs.wins(a, b);
          } else if (rb > ra) {
            ++cs.wins(b, a);
          } else {
            ++cs.ties(a, b);
            ++cs.ties(b, a);
          }
        }
  return cs;
}

BallotList ballots(const ResponseTensor& R) {
  if (R.L() < 2) throw std::invalid_argument("ballots: needs at least two systems");
  const int L = R.L();
  const int M = R.M();
  const int N = R.N();
  const int C = R.C();
  BallotList bl;
  bl.L = L;
  bl.items.resize(static_cast<std::size_t>(L) * M * N);
  bl.group_sizes.reserve(static_cast<std::size_t>(std::min(L, C + 1)) * M * N);
  bl.ballots.reserve(static_cast<std::size_t>(M) * N);

  // Outcome levels are small integers: counting sort per ballot, emitting the
  // non-empty levels from C down to 0 with systems ascending inside a level.
  std::vector<int> count(C + 1, 0);
  std::vector<std::size_t> offset(C + 1, 0);
  std::vector<int> outc(L);
  const int* base = R.data().data();
  const std::size_t stride = static_cast<std::size_t>(M) * N;
  std::size_t w = 0;
  for (int m = 0; m < M; ++m)
    for (int n = 0; n < N; ++n) {
      const int* cell = base + static_cast<std::size_t>(m) * N + n;
      for (int l = 0; l < L; ++l) {
        outc[l] = cell[l * stride];
        ++count[outc[l]];
      }
      const int start = static_cast<int>(bl.group_sizes.size());
      for (int level = C; level >= 0; --level)
        if (count[level] > 0) {
          offset[level] = w;
          w += count[level];
          bl.group_sizes.push_back(count[level]);
        }
      for (int l = 0; l < L; ++l) bl.items[offset[outc[l]]++] = l;
      for (int l = 0; l < L; ++l) count[outc[l]] = 0;
      bl.ballots.emplace_back(start, static_cast<int>(bl.group_sizes.size()));
    }
  return bl;
}

Grid<double> comparison_graph(const ResponseTensor& R) {
  const ComparisonSummary cs = comparison_summary(R);
  const double cells = static_cast<double>(R.M()) * R.N();
  Grid<double> g(R.L(), R.L(), 0.0);
  for (int a = 0; a < R.L(); ++a)
    for (int b = 0; b < R.L(); ++b)
      if (a != b) g(a, b) = static_cast<double>(cs.wins(a, b)) / cells;
  return g;
}

Grid<long long> preference_matrix(const BallotList& bl) {
  const int L = bl.L;
  Grid<long long> pref(L, L, 0);
  long long* p0 = &pref(0, 0);
  int item_pos = 0;
  for (const auto& [gs, ge] : bl.ballots) {
    const int start = item_pos;
    int above_end = item_pos;  // end of items in strictly earlier groups
    for (int g = gs; g < ge; ++g) {
      const int group_end = above_end + bl.group_sizes[g];
      for (int k = above_end; k < group_end; ++k) {
        const int b = bl.items[k];
        for (int a = start; a < above_end; ++a)
          ++p0[static_cast<std::size_t>(bl.items[a]) * L + b];
      }
      above_end = group_end;
    }
    item_pos = above_end;
  }
  return pref;
}

}  // namespace ranklab
