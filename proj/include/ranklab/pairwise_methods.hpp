#pragma once

#include <optional>

#include "ranklab/method_result.hpp"
#include "ranklab/priors.hpp"
#include "ranklab/tensor.hpp"

namespace ranklab {

/// One induced pairwise match. Outcomes compare raw levels on a (task,
/// trial) cell.
struct Match {
  int a, b;
  enum Outcome { kAWins, kBWins, kDraw } outcome;
};

/// All matches in canonical order: tasks, then trials, then ordered pairs
/// a < b. Length M*N*L*(L-1)/2.
std::vector<Match> match_stream(const ResponseTensor& R);

/// Connected components of the undirected comparison graph; edge when the
/// pair has any counted interaction. Returns component id per system.
std::vector<int> comparison_components(const Grid<long long>& wins, const Grid<long long>* ties);

MethodResult elo(const ResponseTensor& R, double k_factor = 32.0, double initial = 1500.0);

struct GlickoParams {
  double initial_rating = 1500.0;
  double initial_rd = 350.0;
  double c = 63.2;       // per-period RD inflation
  double rd_floor = 30.0;
};

/// Applies one Glicko-1 rating period in place: inflates every RD (capped at
/// initial_rd), then batch-updates players from their matches against
/// pre-period opponent values. Exposed so the idle-player rule is testable.
void glicko_period(std::vector<double>& rating, std::vector<double>& rd,
                   const std::vector<Match>& matches, const GlickoParams& params);

/// Glicko-1 with one rating period per trial index.
MethodResult glicko(const ResponseTensor& R, const GlickoParams& params = {});

struct TrueSkillParams {
  double mu0 = 25.0;
  double sigma0 = 25.0 / 3.0;
  double beta = 25.0 / 6.0;
  double tau_dyn = 25.0 / 300.0;
  double draw_prob = 0.10;
};

/// Two-player TrueSkill over the match stream; score = mu - 3*sigma.
MethodResult trueskill(const ResponseTensor& R, const TrueSkillParams& params = {});

enum class BtVariant { kPlain, kDavidson, kRaoKupper };

struct BtOptions {
  BtVariant variant = BtVariant::kPlain;
  std::optional<Prior> prior;  // MAP on log-strengths when present
  int max_iter = 1000;
  double tol = 1e-10;
};

/// Bradley-Terry strength estimation from win counts. Plain discards ties;
/// davidson and rao_kupper model them with a joint tie parameter. Scores are
/// log-strengths with sum-zero gauge. Diagnostics carry the per-iteration
/// log-likelihood trace and the tie parameter.
MethodResult bradley_terry(const ResponseTensor& R, const BtOptions& options = {});

struct BtMmFit {
  std::vector<double> pi;  // strengths, geometric mean one
  std::vector<double> ll_trace;
  bool converged;
};

/// Plain Bradley-Terry MM on explicit win counts. Exposed for methods that
/// reduce to induced pairwise likelihoods.
BtMmFit bradley_terry_mm(const Grid<long long>& wins, int max_iter = 1000, double tol = 1e-10);

/// Posterior sampling ranker: per pair, P(a beats b) ~ Beta(1 + wins_ab,
/// 1 + wins_ba); each Monte-Carlo sample scores a system by how many
/// opponents it beats with sampled probability > 1/2; final score is the
/// sample mean.
MethodResult thompson(const ResponseTensor& R, int samples = 1000, std::uint64_t seed = 1);

struct McmcOptions {
  int iterations = 20000;
  int burn_in = 5000;
  double proposal_scale = 0.5;
  std::uint64_t seed = 1;
};

/// Random-walk Metropolis over Bradley-Terry log-strengths (first strength
/// pinned to zero during sampling, output re-centered to sum zero). Scores
/// are posterior means; diagnostics report the acceptance rate.
MethodResult bayesian_mcmc(const ResponseTensor& R, const Prior& prior,
                           const McmcOptions& options = {});

}  // namespace ranklab
