#include "ranklab/rank_layer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ranklab {
namespace {

// Inversion count of v via mergesort. Strict inversions only: v[i] > v[j]
// with i < j.
long long count_inversions(std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> buf(n);
  long long inv = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          inv += static_cast<long long>(mid - i);
          buf[k++] = v[j++];
        } else {
          buf[k++] = v[i++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
      std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
    }
  }
  return inv;
}

long long tied_pairs(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  long long total = 0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const long long t = static_cast<long long>(j - i);
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

}  // namespace

std::vector<double> rank_scores(const std::vector<double>& scores, RankScheme scheme,
                                double tolerance) {
  if (scores.empty()) throw std::invalid_argument("rank_scores: empty score vector");
  if (tolerance < 0.0) throw std::invalid_argument("rank_scores: negative tolerance");
  for (double s : scores)
    if (!std::isfinite(s)) throw std::invalid_argument("rank_scores: non-finite score");

  const int n = static_cast<int>(scores.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  std::vector<double> ranks(n, 0.0);
  int group_index = 0;
  int pos = 0;
  while (pos < n) {
    // Scores within tolerance of their neighbour chain into one tie group.
    int end = pos + 1;
    while (end < n && scores[order[end - 1]] - scores[order[end]] <= tolerance) ++end;
    const int size = end - pos;
    switch (scheme) {
      case RankScheme::kCompetition:
        for (int i = pos; i < end; ++i) ranks[order[i]] = pos + 1;
        break;
      case RankScheme::kDense:
        for (int i = pos; i < end; ++i) ranks[order[i]] = group_index + 1;
        break;
      case RankScheme::kOrdinal: {
        std::vector<int> members(order.begin() + pos, order.begin() + end);
        std::sort(members.begin(), members.end());
        for (int i = 0; i < size; ++i) ranks[members[i]] = pos + 1 + i;
        break;
      }
      case RankScheme::kFractional: {
        const double avg = pos + 1 + (size - 1) * 0.5;
        for (int i = pos; i < end; ++i) ranks[order[i]] = avg;
        break;
      }
    }
    ++group_index;
    pos = end;
  }
  return ranks;
}

RankViews rank_views(const std::vector<double>& scores, double tolerance) {
  return RankViews{rank_scores(scores, RankScheme::kCompetition, tolerance),
                   rank_scores(scores, RankScheme::kDense, tolerance),
                   rank_scores(scores, RankScheme::kOrdinal, tolerance),
                   rank_scores(scores, RankScheme::kFractional, tolerance)};
}

std::optional<double> kendall_tau_b(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("kendall_tau_b: size mismatch");
  if (a.size() < 2) throw std::invalid_argument("kendall_tau_b: need at least two items");
  const long long n = static_cast<long long>(a.size());
  const long long n0 = n * (n - 1) / 2;

  std::vector<int> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (a[i] != a[j]) return a[i] < a[j];
    return b[i] < b[j];
  });

  // Pairs tied on a, and pairs tied on both, from the (a, b)-sorted run.
  long long n1 = 0, n3 = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && a[order[j]] == a[order[i]]) ++j;
    const long long t = static_cast<long long>(j - i);
    n1 += t * (t - 1) / 2;
    std::size_t u = i;
    while (u < j) {
      std::size_t v = u;
      while (v < j && b[order[v]] == b[order[u]]) ++v;
      const long long s = static_cast<long long>(v - u);
      n3 += s * (s - 1) / 2;
      u = v;
    }
    i = j;
  }
  const long long n2 = tied_pairs(b);

  std::vector<double> b_sorted(b.size());
  for (std::size_t k = 0; k < order.size(); ++k) b_sorted[k] = b[order[k]];
  const long long nd = count_inversions(b_sorted);
  const long long nc = n0 - n1 - n2 + n3 - nd;

  // Single sqrt of the product so identical inputs score exactly 1.
  const double denom =
      std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
  if (denom == 0.0) return std::nullopt;
  return static_cast<double>(nc - nd) / denom;
}

double mean_abs_rank_error(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("mean_abs_rank_error: size mismatch");
  if (a.empty()) throw std::invalid_argument("mean_abs_rank_error: empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return acc / static_cast<double>(a.size());
}

double top1_agreement(const std::vector<double>& rank_a, const std::vector<double>& rank_b) {
  if (rank_a.size() != rank_b.size()) throw std::invalid_argument("top1_agreement: size mismatch");
  if (rank_a.empty()) throw std::invalid_argument("top1_agreement: empty input");
  const double min_a = *std::min_element(rank_a.begin(), rank_a.end());
  const double min_b = *std::min_element(rank_b.begin(), rank_b.end());
  int inter = 0, uni = 0;
  for (std::size_t i = 0; i < rank_a.size(); ++i) {
    const bool ta = rank_a[i] == min_a;
    const bool tb = rank_b[i] == min_b;
    if (ta && tb) ++inter;
    if (ta || tb) ++uni;
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace ranklab
