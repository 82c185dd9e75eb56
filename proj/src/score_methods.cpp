#include "ranklab/score_methods.hpp"

#include <algorithm>
#include <cmath>

namespace ranklab {
namespace {

double log_choose(int n, int r) {
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

}  // namespace

MethodResult avg(const ResponseTensor& R, const Rubric& w) {
  w.check(R.C());
  std::vector<double> scores(R.L(), 0.0);
  const double cells = static_cast<double>(R.M()) * R.N();
  for (int l = 0; l < R.L(); ++l) {
    double acc = 0.0;
    for (int m = 0; m < R.M(); ++m)
      for (int n = 0; n < R.N(); ++n) acc += w[R(l, m, n)];
    scores[l] = acc / cells;
  }
  return make_result(std::move(scores));
}

BayesEstimate bayes_evaluate(const OutcomeMatrix& E, const Rubric& w, double prior_strength) {
  if (prior_strength <= 0) throw std::invalid_argument("bayes: prior_strength must be > 0");
  const int C = static_cast<int>(w.weights.size()) - 1;
  w.check(C);
  std::vector<long long> counts(C + 1, 0);
  for (int m = 0; m < E.rows(); ++m)
    for (int n = 0; n < E.cols(); ++n) {
      const int v = E(m, n);
      if (v < 0 || v > C) throw std::invalid_argument("bayes: outcome outside rubric range");
      ++counts[v];
    }
  const double T = static_cast<double>(E.rows()) * E.cols();
  const double alpha_total = prior_strength * (C + 1);

  // Dirichlet posterior over category probabilities; mu and sigma are the
  // mean and std of the linear functional sum_c w_c p_c.
  double mu = 0.0, second = 0.0;
  for (int c = 0; c <= C; ++c) {
    const double p = (counts[c] + prior_strength) / (T + alpha_total);
    mu += w[c] * p;
    second += w[c] * w[c] * p;
  }
  const double var = (second - mu * mu) / (T + alpha_total + 1.0);
  return BayesEstimate{mu, std::sqrt(std::max(var, 0.0))};
}

MethodResult bayes(const ResponseTensor& R, const Rubric& w, double prior_strength) {
  std::vector<double> scores(R.L()), sigmas(R.L());
  for (int l = 0; l < R.L(); ++l) {
    OutcomeMatrix E(R.M(), R.N());
    for (int m = 0; m < R.M(); ++m)
      for (int n = 0; n < R.N(); ++n) E(m, n) = R(l, m, n);
    const BayesEstimate est = bayes_evaluate(E, w, prior_strength);
    scores[l] = est.mu;
    sigmas[l] = est.sigma;
  }
  MethodResult r = make_result(std::move(scores));
  r.diagnostics["sigma"] = std::move(sigmas);
  return r;
}

double hypergeometric_pmf(int j, int N, int c, int k) {
  if (j < 0 || j > k || j > c || k - j > N - c) return 0.0;
  return std::exp(log_choose(c, j) + log_choose(N - c, k - j) - log_choose(N, k));
}

double pass_at_k_task(int N, int c, int k) {
  if (k > N - c) return 1.0;
  double none = 1.0;
  for (int i = 0; i < k; ++i) none *= static_cast<double>(N - c - i) / (N - i);
  return 1.0 - none;
}

double pass_hat_k_task(int N, int c, int k) {
  if (k > c) return 0.0;
  double all = 1.0;
  for (int i = 0; i < k; ++i) all *= static_cast<double>(c - i) / (N - i);
  return all;
}

double g_pass_at_k_task(int N, int c, int k, double tau) {
  const int j0 = static_cast<int>(std::ceil(tau * k - 1e-9));
  double acc = 0.0;
  for (int j = std::max(j0, 0); j <= k; ++j) acc += hypergeometric_pmf(j, N, c, k);
  return std::min(acc, 1.0);
}

double mg_pass_at_k_task(int N, int c, int k) {
  // Mean of G-Pass@k over the thresholds i/k strictly above one half. Empty
  // at k = 1, where the metric degenerates to 0 for every system.
  const int lo = k / 2 + k % 2 + 1;  // ceil(k/2) + 1
  if (lo > k) return 0.0;
  double acc = 0.0;
  for (int i = lo; i <= k; ++i) {
    double tail = 0.0;
    for (int j = i; j <= k; ++j) tail += hypergeometric_pmf(j, N, c, k);
    acc += std::min(tail, 1.0);
  }
  return acc / (k - lo + 1);
}

MethodResult pass_family(const ResponseTensor& R, PassVariant variant, int k, double tau) {
  if (k < 1) throw std::invalid_argument("pass family: k must be >= 1");
  if (k > R.N()) throw std::invalid_argument("pass family: k exceeds the trial count");
  if (variant == PassVariant::kGPassAtK && !(tau > 0.0 && tau <= 1.0))
    throw std::invalid_argument("pass family: tau must be in (0, 1]");

  const Grid<int> counts = top_category_counts(R);
  std::vector<double> scores(R.L(), 0.0);
  for (int l = 0; l < R.L(); ++l) {
    double acc = 0.0;
    for (int m = 0; m < R.M(); ++m) {
      const int c = counts(l, m);
      switch (variant) {
        case PassVariant::kPassAtK: acc += pass_at_k_task(R.N(), c, k); break;
        case PassVariant::kPassHatK: acc += pass_hat_k_task(R.N(), c, k); break;
        case PassVariant::kGPassAtK: acc += g_pass_at_k_task(R.N(), c, k, tau); break;
        case PassVariant::kMGPassAtK: acc += mg_pass_at_k_task(R.N(), c, k); break;
      }
    }
    scores[l] = acc / R.M();
  }
  MethodResult r = make_result(std::move(scores));
  r.diagnostics["k"] = {static_cast<double>(k)};
  if (variant == PassVariant::kGPassAtK) r.diagnostics["tau"] = {tau};
  return r;
}

MethodResult inverse_difficulty(const ResponseTensor& R) {
  const Grid<int> counts = top_category_counts(R);
  const double per_task = static_cast<double>(R.L()) * R.N();
  std::vector<double> weight(R.M(), 0.0);
  double total = 0.0;
  for (int m = 0; m < R.M(); ++m) {
    long long solved = 0;
    for (int l = 0; l < R.L(); ++l) solved += counts(l, m);
    weight[m] = 1.0 - static_cast<double>(solved) / per_task;
    total += weight[m];
  }
  if (total > 0.0) {
    for (double& v : weight) v /= total;
  } else {
    std::fill(weight.begin(), weight.end(), 1.0 / R.M());
  }

  std::vector<double> scores(R.L(), 0.0);
  for (int l = 0; l < R.L(); ++l) {
    double acc = 0.0;
    for (int m = 0; m < R.M(); ++m)
      acc += weight[m] * (static_cast<double>(counts(l, m)) / R.N());
    scores[l] = acc;
  }
  MethodResult r = make_result(std::move(scores));
  r.diagnostics["task_weight"] = std::move(weight);
  return r;
}

}  // namespace ranklab
