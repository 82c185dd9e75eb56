#pragma once

#include "ranklab/method_result.hpp"
#include "ranklab/tensor.hpp"

namespace ranklab {

/// Mean rubric credit over all (task, trial) cells per system.
MethodResult avg(const ResponseTensor& R, const Rubric& w);

struct BayesEstimate {
  double mu;
  double sigma;
};

/// Posterior mean and standard deviation of the expected rubric credit under
/// a symmetric Dirichlet(prior_strength) prior over category probabilities,
/// pooling all cells of one system's task x trial outcome matrix.
BayesEstimate bayes_evaluate(const OutcomeMatrix& E, const Rubric& w, double prior_strength = 1.0);

/// bayes_evaluate per system; scores are the posterior means, diagnostics
/// carry "sigma".
MethodResult bayes(const ResponseTensor& R, const Rubric& w, double prior_strength = 1.0);

enum class PassVariant { kPassAtK, kPassHatK, kGPassAtK, kMGPassAtK };

/// Per-task statistics for k draws without replacement from N trials with c
/// successes. Success on graded data means the top category (outcome == C).
double hypergeometric_pmf(int j, int N, int c, int k);
double pass_at_k_task(int N, int c, int k);        // P(at least one success)
double pass_hat_k_task(int N, int c, int k);       // P(all k succeed)
double g_pass_at_k_task(int N, int c, int k, double tau);  // P(X >= ceil(tau*k))
double mg_pass_at_k_task(int N, int c, int k);     // mean of G-Pass over tau > 1/2

/// Task scores averaged over tasks. Throws if k > N or k < 1; the method
/// registry clamps k to N before calling (the harness contract for small
/// trial budgets).
MethodResult pass_family(const ResponseTensor& R, PassVariant variant, int k, double tau = 0.5);

/// Solve rates weighted by task difficulty: d_m = 1 - overall solve rate of
/// task m, weights d_m / sum(d); uniform fallback when every task is always
/// solved. Success means top category.
MethodResult inverse_difficulty(const ResponseTensor& R);

}  // namespace ranklab
