#pragma once

#include "ranklab/method_result.hpp"
#include "ranklab/tensor.hpp"

namespace ranklab {

enum class IrtModel { kRaschJml, kRaschMml, kRasch2pl, kRasch3pl, kDynamic };

struct IrtOptions {
  int quadrature_nodes = 41;  // Gauss-Hermite nodes for marginal models
  int max_iter = 200;
  double tol = 1e-8;
  double kappa = 1.0;  // random-walk drift penalty for the dynamic model
};

/// Item-response-theory fits on binary tensors (C must be 1). Scores are
/// estimated abilities: joint-likelihood theta for the JML and dynamic
/// models (dynamic reports the last trial's ability), expected a-posteriori
/// theta for the marginal models. Diagnostics carry task difficulties and,
/// where fitted, discriminations and guessing rates.
MethodResult irt_fit(const ResponseTensor& R, IrtModel model, const IrtOptions& options = {});

/// Joint Rasch log-likelihood over success counts s(l,m) out of N trials.
/// Exposed together with its analytic gradient for finite-difference checks.
double rasch_joint_log_likelihood(const Grid<int>& successes, int trials,
                                  const std::vector<double>& theta,
                                  const std::vector<double>& b);
void rasch_joint_gradient(const Grid<int>& successes, int trials,
                          const std::vector<double>& theta, const std::vector<double>& b,
                          std::vector<double>& g_theta, std::vector<double>& g_b);

/// Nodes and weights such that E[f(Z)], Z ~ N(0,1), is approximated by
/// sum_q weight[q] * f(node[q]).
struct GaussHermite {
  std::vector<double> nodes, weights;
};
GaussHermite gauss_hermite_normal(int n);

enum class ListwiseModel { kPlackettLuce, kDavidsonLuce, kBradleyTerryLuce };

struct ListwiseOptions {
  int max_iter = 1000;
  double tol = 1e-10;
  std::uint64_t seed = 1;  // tie-breaking randomization for plackett_luce
};

/// Listwise choice models over per-cell ballots. plackett_luce breaks tie
/// groups into strict orders by seeded shuffling and runs MM updates;
/// davidson_luce keeps tie groups and fits per-size tie parameters;
/// bradley_terry_luce fits plain Bradley-Terry on the induced pairwise
/// preferences. Scores are log-worths with worths normalized to sum one.
MethodResult listwise_fit(const ResponseTensor& R, ListwiseModel model,
                          const ListwiseOptions& options = {});

}  // namespace ranklab
