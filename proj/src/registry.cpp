#include "ranklab/registry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "ranklab/latent_methods.hpp"
#include "ranklab/pairwise_methods.hpp"
#include "ranklab/score_methods.hpp"
#include "ranklab/social_graph_methods.hpp"

namespace ranklab {
namespace {

double param(const MethodOptions& o, const std::string& key, double dflt) {
  auto it = o.params.find(key);
  return it == o.params.end() ? dflt : it->second;
}

int int_param(const MethodOptions& o, const std::string& key, int dflt, int lo, int hi) {
  const double v = param(o, key, dflt);
  const double r = std::round(v);
  if (!std::isfinite(v) || std::abs(v - r) > 1e-9 || r < lo || r > hi)
    throw std::invalid_argument("parameter '" + key + "' must be an integer in [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(r);
}

double real_param(const MethodOptions& o, const std::string& key, double dflt, double lo,
                  double hi) {
  const double v = param(o, key, dflt);
  if (!std::isfinite(v) || v < lo || v > hi)
    throw std::invalid_argument("parameter '" + key + "' out of range");
  return v;
}

Rubric rubric_for(const ResponseTensor& R, const MethodOptions& o) {
  if (o.rubric) {
    o.rubric->check(R.C());
    return *o.rubric;
  }
  return identity_rubric(R.C());
}

// Pass-family k, clamped to the trial budget so small-N runs stay defined.
int clamped_k(const ResponseTensor& R, const MethodOptions& o, std::string* note) {
  int k = int_param(o, "k", 4, 1, 1 << 20);
  if (k > R.N()) {
    *note = "k=" + std::to_string(k) + " exceeds N=" + std::to_string(R.N()) +
            "; clamped to N";
    k = R.N();
  }
  return k;
}

MethodResult run_pass(const ResponseTensor& R, const MethodOptions& o, PassVariant variant,
                      bool wants_tau) {
  std::string note;
  const int k = clamped_k(R, o, &note);
  const double tau = wants_tau ? real_param(o, "tau", 0.5, 1e-12, 1.0) : 0.5;
  MethodResult r = pass_family(R, variant, k, tau);
  if (!note.empty()) r.notes.push_back(note);
  return r;
}

MethodResult run_bt(const ResponseTensor& R, const MethodOptions& o, BtVariant variant) {
  BtOptions bo;
  bo.variant = variant;
  bo.prior = o.prior;
  bo.max_iter = int_param(o, "max_iter", 1000, 1, 1000000);
  bo.tol = real_param(o, "tol", 1e-10, 0.0, 1.0);
  return bradley_terry(R, bo);
}

IrtOptions irt_options(const MethodOptions& o) {
  IrtOptions io;
  io.quadrature_nodes = int_param(o, "quadrature_nodes", 41, 3, 501);
  io.max_iter = int_param(o, "max_iter", 200, 1, 1000000);
  io.tol = real_param(o, "tol", 1e-8, 0.0, 1.0);
  io.kappa = real_param(o, "kappa", 1.0, 0.0, 1e12);
  return io;
}

ListwiseOptions listwise_options(const MethodOptions& o) {
  ListwiseOptions lo;
  lo.max_iter = int_param(o, "max_iter", 1000, 1, 1000000);
  lo.tol = real_param(o, "tol", 1e-10, 0.0, 1.0);
  lo.seed = o.seed;
  return lo;
}

struct Entry {
  std::set<std::string> keys;  // accepted params
  std::function<MethodResult(const ResponseTensor&, const MethodOptions&)> run;
};

const std::vector<std::pair<std::string, Entry>>& table() {
  static const std::vector<std::pair<std::string, Entry>> t = {
      // score methods
      {"avg", {{}, [](const ResponseTensor& R, const MethodOptions& o) {
                 return avg(R, rubric_for(R, o));
               }}},
      {"bayes", {{"prior_strength"}, [](const ResponseTensor& R, const MethodOptions& o) {
                   return bayes(R, rubric_for(R, o),
                                real_param(o, "prior_strength", 1.0, 1e-12, 1e12));
                 }}},
      {"pass_at_k", {{"k"}, [](const ResponseTensor& R, const MethodOptions& o) {
                       return run_pass(R, o, PassVariant::kPassAtK, false);
                     }}},
      {"pass_hat_k", {{"k"}, [](const ResponseTensor& R, const MethodOptions& o) {
                        return run_pass(R, o, PassVariant::kPassHatK, false);
                      }}},
      {"g_pass_at_k_tau", {{"k", "tau"}, [](const ResponseTensor& R, const MethodOptions& o) {
                             return run_pass(R, o, PassVariant::kGPassAtK, true);
                           }}},
      {"mg_pass_at_k", {{"k"}, [](const ResponseTensor& R, const MethodOptions& o) {
                          return run_pass(R, o, PassVariant::kMGPassAtK, false);
                        }}},
      {"inverse_difficulty", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                                return inverse_difficulty(R);
                              }}},
      // pairwise methods
      {"elo", {{"k_factor", "initial"}, [](const ResponseTensor& R, const MethodOptions& o) {
                 return elo(R, real_param(o, "k_factor", 32.0, 1e-6, 1e6),
                            real_param(o, "initial", 1500.0, -1e9, 1e9));
               }}},
      {"glicko",
       {{"initial_rating", "initial_rd", "c", "rd_floor"},
        [](const ResponseTensor& R, const MethodOptions& o) {
          GlickoParams gp;
          gp.initial_rating = real_param(o, "initial_rating", gp.initial_rating, -1e9, 1e9);
          gp.initial_rd = real_param(o, "initial_rd", gp.initial_rd, 1e-6, 1e9);
          gp.c = real_param(o, "c", gp.c, 0.0, 1e9);
          gp.rd_floor = real_param(o, "rd_floor", gp.rd_floor, 0.0, 1e9);
          return glicko(R, gp);
        }}},
      {"trueskill",
       {{"mu0", "sigma0", "beta", "tau_dyn", "draw_prob"},
        [](const ResponseTensor& R, const MethodOptions& o) {
          TrueSkillParams tp;
          tp.mu0 = real_param(o, "mu0", tp.mu0, -1e9, 1e9);
          tp.sigma0 = real_param(o, "sigma0", tp.sigma0, 1e-9, 1e9);
          tp.beta = real_param(o, "beta", tp.beta, 1e-9, 1e9);
          tp.tau_dyn = real_param(o, "tau_dyn", tp.tau_dyn, 0.0, 1e9);
          tp.draw_prob = real_param(o, "draw_prob", tp.draw_prob, 1e-9, 1.0 - 1e-9);
          return trueskill(R, tp);
        }}},
      {"bradley_terry", {{"max_iter", "tol"}, [](const ResponseTensor& R, const MethodOptions& o) {
                           return run_bt(R, o, BtVariant::kPlain);
                         }}},
      {"bradley_terry_davidson",
       {{"max_iter", "tol"}, [](const ResponseTensor& R, const MethodOptions& o) {
          return run_bt(R, o, BtVariant::kDavidson);
        }}},
      {"rao_kupper", {{"max_iter", "tol"}, [](const ResponseTensor& R, const MethodOptions& o) {
                        return run_bt(R, o, BtVariant::kRaoKupper);
                      }}},
      {"thompson", {{"samples"}, [](const ResponseTensor& R, const MethodOptions& o) {
                      return thompson(R, int_param(o, "samples", 1000, 1, 100000000), o.seed);
                    }}},
      {"bayesian_mcmc",
       {{"iterations", "burn_in", "proposal_scale"},
        [](const ResponseTensor& R, const MethodOptions& o) {
          McmcOptions mo;
          mo.iterations = int_param(o, "iterations", 20000, 1, 100000000);
          mo.burn_in = int_param(o, "burn_in", 5000, 0, 100000000);
          if (mo.burn_in >= mo.iterations)
            throw std::invalid_argument("parameter 'burn_in' must be below 'iterations'");
          mo.proposal_scale = real_param(o, "proposal_scale", 0.5, 1e-9, 1e9);
          mo.seed = o.seed;
          return bayesian_mcmc(R, o.prior ? *o.prior : default_prior(), mo);
        }}},
      // latent-trait methods
      {"rasch",
       {{"max_iter", "tol"}, [](const ResponseTensor& R, const MethodOptions& o) {
          return irt_fit(R, IrtModel::kRaschJml, irt_options(o));
        }}},
      {"rasch_mml",
       {{"quadrature_nodes", "max_iter", "tol"},
        [](const ResponseTensor& R, const MethodOptions& o) {
          return irt_fit(R, IrtModel::kRaschMml, irt_options(o));
        }}},
      {"rasch_2pl",
       {{"quadrature_nodes", "max_iter", "tol"},
        [](const ResponseTensor& R, const MethodOptions& o) {
          return irt_fit(R, IrtModel::kRasch2pl, irt_options(o));
        }}},
      {"rasch_3pl",
       {{"quadrature_nodes", "max_iter", "tol"},
        [](const ResponseTensor& R, const MethodOptions& o) {
          return irt_fit(R, IrtModel::kRasch3pl, irt_options(o));
        }}},
      {"dynamic_irt",
       {{"kappa", "max_iter", "tol"}, [](const ResponseTensor& R, const MethodOptions& o) {
          return irt_fit(R, IrtModel::kDynamic, irt_options(o));
        }}},
      {"plackett_luce",
       {{"max_iter", "tol"}, [](const ResponseTensor& R, const MethodOptions& o) {
          return listwise_fit(R, ListwiseModel::kPlackettLuce, listwise_options(o));
        }}},
      {"davidson_luce",
       {{"max_iter", "tol"}, [](const ResponseTensor& R, const MethodOptions& o) {
          return listwise_fit(R, ListwiseModel::kDavidsonLuce, listwise_options(o));
        }}},
      {"bradley_terry_luce",
       {{"max_iter", "tol"}, [](const ResponseTensor& R, const MethodOptions& o) {
          return listwise_fit(R, ListwiseModel::kBradleyTerryLuce, listwise_options(o));
        }}},
      // voting rules
      {"borda", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                   return borda(R);
                 }}},
      {"copeland", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                      return vote(ballots(R), VoteRule::kCopeland);
                    }}},
      {"schulze", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                     return vote(ballots(R), VoteRule::kSchulze);
                   }}},
      {"ranked_pairs", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                          return vote(ballots(R), VoteRule::kRankedPairs);
                        }}},
      {"kemeny_young", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                          return vote(ballots(R), VoteRule::kKemenyYoung);
                        }}},
      {"nanson", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                    return vote(ballots(R), VoteRule::kNanson);
                  }}},
      {"baldwin", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                     return vote(ballots(R), VoteRule::kBaldwin);
                   }}},
      {"majority_judgment", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                               return majority_judgment(R);
                             }}},
      // graph and game-theoretic methods
      {"pagerank",
       {{"damping", "max_iter", "tol"}, [](const ResponseTensor& R, const MethodOptions& o) {
          return pagerank(R, real_param(o, "damping", 0.85, 0.0, 1.0 - 1e-9),
                          int_param(o, "max_iter", 100000, 1, 100000000),
                          real_param(o, "tol", 1e-12, 0.0, 1.0));
        }}},
      {"rank_centrality",
       {{"max_iter", "tol"}, [](const ResponseTensor& R, const MethodOptions& o) {
          return rank_centrality(R, int_param(o, "max_iter", 100000, 1, 100000000),
                                 real_param(o, "tol", 1e-12, 0.0, 1.0));
        }}},
      {"alpharank",
       {{"mutation", "max_iter"}, [](const ResponseTensor& R, const MethodOptions& o) {
          return alpharank(R, real_param(o, "mutation", 1e-3, 0.0, 1.0),
                           int_param(o, "max_iter", 100000, 1, 100000000));
        }}},
      {"nash", {{"iterations"}, [](const ResponseTensor& R, const MethodOptions& o) {
                  return nash_rank(R, int_param(o, "iterations", 100000, 1, 100000000));
                }}},
      {"serial_rank", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                         return serial_rank(R);
                       }}},
      {"hodge_rank", {{}, [](const ResponseTensor& R, const MethodOptions&) {
                        return hodge_rank(R);
                      }}},
  };
  return t;
}

const Entry& entry(const std::string& name) {
  for (const auto& [n, e] : table())
    if (n == name) return e;
  throw std::invalid_argument("unknown method '" + name + "'");
}

}  // namespace

std::vector<std::string> method_names() {
  std::vector<std::string> names;
  names.reserve(table().size());
  for (const auto& [n, e] : table()) names.push_back(n);
  return names;
}

bool has_method(const std::string& name) {
  for (const auto& [n, e] : table())
    if (n == name) return true;
  return false;
}

void validate_options(const std::string& name, const MethodOptions& options) {
  const Entry& e = entry(name);
  for (const auto& [key, value] : options.params)
    if (!e.keys.count(key))
      throw std::invalid_argument("method '" + name + "' does not accept parameter '" + key +
                                  "'");
  if (options.tie_tolerance && (!std::isfinite(*options.tie_tolerance) ||
                                *options.tie_tolerance < 0.0))
    throw std::invalid_argument("tie_tolerance must be finite and non-negative");
}

MethodResult run_method(const std::string& name, const ResponseTensor& R,
                        const MethodOptions& options) {
  validate_options(name, options);
  MethodResult r = entry(name).run(R, options);
  if (options.tie_tolerance) r.ranks = rank_views(r.scores, *options.tie_tolerance);
  return r;
}

}  // namespace ranklab
