#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ranklab/common.hpp"
#include "ranklab/tensor.hpp"

namespace ranklab::testing {

inline ResponseTensor make_tensor(int L, int M, int N, int C, std::vector<int> flat) {
  return ResponseTensor(L, M, N, C, std::move(flat));
}

inline ResponseTensor random_tensor(RandomSource& rng, int L, int M, int N, int C) {
  ResponseTensor R(L, M, N, C);
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < M; ++m)
      for (int n = 0; n < N; ++n) R(l, m, n) = rng.uniform_int(C + 1);
  return R;
}

/// Direct pair-count tau-b: O(L^2) double loop straight from the definition.
/// Returns NaN when a side is fully tied (denominator zero).
inline double tau_b_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  const int n = static_cast<int>(a.size());
  long long concordant = 0, discordant = 0, tie_a = 0, tie_b = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da == 0) ++tie_a;
      if (db == 0) ++tie_b;
      if (da * db > 0) ++concordant;
      if (da * db < 0) ++discordant;
    }
  const long long n0 = static_cast<long long>(n) * (n - 1) / 2;
  const double denom =
      std::sqrt(static_cast<double>(n0 - tie_a) * static_cast<double>(n0 - tie_b));
  if (denom == 0) return std::nan("");
  return static_cast<double>(concordant - discordant) / denom;
}

/// Permutes system labels: out(sigma[l], m, n) = R(l, m, n).
inline ResponseTensor relabel(const ResponseTensor& R, const std::vector<int>& sigma) {
  ResponseTensor out(R.L(), R.M(), R.N(), R.C());
  for (int l = 0; l < R.L(); ++l)
    for (int m = 0; m < R.M(); ++m)
      for (int n = 0; n < R.N(); ++n) out(sigma[l], m, n) = R(l, m, n);
  return out;
}

}  // namespace ranklab::testing
