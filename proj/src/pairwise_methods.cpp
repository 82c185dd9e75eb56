#include "ranklab/pairwise_methods.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ranklab {
namespace {

constexpr double kPiFloor = 1e-300;  // keeps boundary strengths finite in logs

double normal_pdf(double x) { return std::exp(-0.5 * x * x) * 0.3989422804014327; }
double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

// Acklam's rational approximation refined by one Halley step.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p outside (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - plow) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1 + 0.5 * x * u);
}

struct WinTieCounts {
  Grid<long long> wins;
  Grid<long long> ties;
};

WinTieCounts counts_of(const ResponseTensor& R) {
  ComparisonSummary cs = comparison_summary(R);
  return {std::move(cs.wins), std::move(cs.ties)};
}

std::string describe_components(const std::vector<int>& comp) {
  int k = *std::max_element(comp.begin(), comp.end()) + 1;
  std::string out;
  for (int c = 0; c < k; ++c) {
    out += c ? " | {" : "{";
    bool first = true;
    for (std::size_t i = 0; i < comp.size(); ++i)
      if (comp[i] == c) {
        if (!first) out += ',';
        out += std::to_string(i + 1);
        first = false;
      }
    out += '}';
  }
  return out;
}

double bt_log_likelihood(const Grid<long long>& wins, const Grid<long long>& ties,
                         BtVariant variant, const std::vector<double>& pi, double tie_param) {
  const int L = wins.rows();
  double ll = 0.0;
  for (int a = 0; a < L; ++a)
    for (int b = a + 1; b < L; ++b) {
      const double wa = static_cast<double>(wins(a, b));
      const double wb = static_cast<double>(wins(b, a));
      const double t = static_cast<double>(ties(a, b));
      switch (variant) {
        case BtVariant::kPlain: {
          if (wa + wb == 0) break;
          const double denom = std::log(pi[a] + pi[b]);
          ll += wa * (std::log(pi[a]) - denom) + wb * (std::log(pi[b]) - denom);
          break;
        }
        case BtVariant::kDavidson: {
          if (wa + wb + t == 0) break;
          const double root = std::sqrt(pi[a] * pi[b]);
          const double denom = std::log(pi[a] + pi[b] + tie_param * root);
          ll += wa * (std::log(pi[a]) - denom) + wb * (std::log(pi[b]) - denom);
          if (t > 0) ll += t * (std::log(tie_param) + std::log(root) - denom);
          break;
        }
        case BtVariant::kRaoKupper: {
          if (wa + wb + t == 0) break;
          const double dab = std::log(pi[a] + tie_param * pi[b]);
          const double dba = std::log(pi[b] + tie_param * pi[a]);
          ll += wa * (std::log(pi[a]) - dab) + wb * (std::log(pi[b]) - dba);
          if (t > 0)
            ll += t * (std::log(tie_param * tie_param - 1.0) + std::log(pi[a]) +
                       std::log(pi[b]) - dab - dba);
          break;
        }
      }
    }
  return ll;
}

struct BtFit {
  std::vector<double> pi;
  double tie_param = 0.0;
  std::vector<double> ll_trace;
  bool converged = false;
};

BtFit fit_bt(const Grid<long long>& wins, const Grid<long long>& ties, BtVariant variant,
             int max_iter, double tol) {
  const int L = wins.rows();
  BtFit fit;
  fit.pi.assign(L, 1.0);

  long long total_ties = 0;
  for (int a = 0; a < L; ++a)
    for (int b = a + 1; b < L; ++b) total_ties += ties(a, b);
  fit.tie_param = variant == BtVariant::kRaoKupper ? (total_ties ? 1.5 : 1.0)
                                                   : (total_ties ? 0.5 : 0.0);

  std::vector<double> next(L);
  for (int iter = 0; iter < max_iter; ++iter) {
    double& nu = fit.tie_param;
    for (int a = 0; a < L; ++a) {
      double numer = 0.0, denom = 0.0;
      for (int b = 0; b < L; ++b) {
        if (b == a) continue;
        const double wab = static_cast<double>(wins(a, b));
        const double wba = static_cast<double>(wins(b, a));
        const double t = static_cast<double>(ties(a, b));
        switch (variant) {
          case BtVariant::kPlain: {
            const double n = wab + wba;
            if (n == 0) break;
            numer += wab;
            denom += n / (fit.pi[a] + fit.pi[b]);
            break;
          }
          case BtVariant::kDavidson: {
            const double n = wab + wba + t;
            if (n == 0) break;
            const double d = fit.pi[a] + fit.pi[b] + nu * std::sqrt(fit.pi[a] * fit.pi[b]);
            numer += wab + t / 2.0;
            denom += n * (1.0 + 0.5 * nu * std::sqrt(fit.pi[b] / fit.pi[a])) / d;
            break;
          }
          case BtVariant::kRaoKupper: {
            if (wab + wba + t == 0) break;
            numer += wab + t;
            denom += (wab + t) / (fit.pi[a] + nu * fit.pi[b]) +
                     (wba + t) * nu / (fit.pi[b] + nu * fit.pi[a]);
            break;
          }
        }
      }
      next[a] = denom > 0 ? std::max(numer / denom, kPiFloor) : fit.pi[a];
    }

    // Sum-zero gauge on log-strengths (geometric mean one).
    double log_gm = 0.0;
    for (double v : next) log_gm += std::log(v);
    log_gm /= L;
    for (double& v : next) v = std::max(v * std::exp(-log_gm), kPiFloor);

    if (variant == BtVariant::kDavidson && total_ties > 0) {
      double s = 0.0;
      for (int a = 0; a < L; ++a)
        for (int b = a + 1; b < L; ++b) {
          const double n = static_cast<double>(wins(a, b) + wins(b, a) + ties(a, b));
          if (n == 0) continue;
          const double root = std::sqrt(next[a] * next[b]);
          s += n * root / (next[a] + next[b] + nu * root);
        }
      if (s > 0) nu = static_cast<double>(total_ties) / s;
    } else if (variant == BtVariant::kRaoKupper && total_ties > 0) {
      double c = 0.0;
      for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) {
          if (a == b) continue;
          const double n = static_cast<double>(wins(a, b) + ties(a, b));
          if (n == 0) continue;
          c += n * next[b] / (next[a] + nu * next[b]);
        }
      if (c > 0) nu = (total_ties + std::sqrt(static_cast<double>(total_ties) * total_ties + c * c)) / c;
    }

    double delta = 0.0;
    for (int a = 0; a < L; ++a) delta = std::max(delta, std::abs(std::log(next[a] / fit.pi[a])));
    fit.pi = next;
    fit.ll_trace.push_back(bt_log_likelihood(wins, ties, variant, fit.pi, fit.tie_param));
    if (delta < tol) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

// MAP refinement: gradient ascent with Armijo backtracking on log-strengths
// (numerical gradient of likelihood + per-parameter prior), step directions
// projected onto the sum-zero gauge.
void map_refine(const Grid<long long>& wins, const Grid<long long>& ties, BtVariant variant,
                const Prior& prior, BtFit& fit, int max_iter) {
  const int L = wins.rows();
  std::vector<double> lambda(L);
  for (int a = 0; a < L; ++a) lambda[a] = std::log(fit.pi[a]);

  auto objective = [&](const std::vector<double>& lam) {
    std::vector<double> pi(L);
    for (int a = 0; a < L; ++a) pi[a] = std::exp(lam[a]);
    double f = bt_log_likelihood(wins, ties, variant, pi, fit.tie_param);
    for (int a = 0; a < L; ++a) f += prior.log_density(lam[a]);
    return f;
  };

  const double h = 1e-6;
  double f = objective(lambda);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<double> g(L);
    std::vector<double> probe = lambda;
    for (int a = 0; a < L; ++a) {
      probe[a] = lambda[a] + h;
      const double fp = objective(probe);
      probe[a] = lambda[a] - h;
      const double fm = objective(probe);
      probe[a] = lambda[a];
      g[a] = (fp - fm) / (2 * h);
    }
    const double gbar = std::accumulate(g.begin(), g.end(), 0.0) / L;
    for (double& v : g) v -= gbar;
    double gnorm2 = 0.0;
    for (double v : g) gnorm2 += v * v;
    if (std::sqrt(gnorm2) < 1e-9) break;

    double step = 1.0;
    bool moved = false;
    for (int back = 0; back < 40; ++back) {
      std::vector<double> cand(L);
      for (int a = 0; a < L; ++a) cand[a] = lambda[a] + step * g[a];
      const double fc = objective(cand);
      if (fc >= f + 1e-4 * step * gnorm2) {
        lambda = std::move(cand);
        f = fc;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }

  const double mean = std::accumulate(lambda.begin(), lambda.end(), 0.0) / L;
  for (int a = 0; a < L; ++a) fit.pi[a] = std::exp(lambda[a] - mean);
}

}  // namespace

std::vector<Match> match_stream(const ResponseTensor& R) {
  if (R.L() < 2) throw std::invalid_argument("match_stream: needs at least two systems");
  std::vector<Match> out;
  out.reserve(static_cast<std::size_t>(R.M()) * R.N() * R.L() * (R.L() - 1) / 2);
  for (int m = 0; m < R.M(); ++m)
    for (int n = 0; n < R.N(); ++n)
      for (int a = 0; a < R.L(); ++a)
        for (int b = a + 1; b < R.L(); ++b) {
          const int ra = R(a, m, n), rb = R(b, m, n);
          out.push_back({a, b,
                         ra > rb   ? Match::kAWins
                         : rb > ra ? Match::kBWins
                                   : Match::kDraw});
        }
  return out;
}

std::vector<int> comparison_components(const Grid<long long>& wins, const Grid<long long>* ties) {
  const int L = wins.rows();
  std::vector<int> comp(L, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < L; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < L; ++b) {
        if (comp[b] >= 0) continue;
        long long weight = wins(a, b) + wins(b, a);
        if (ties) weight += (*ties)(a, b);
        if (weight > 0) {
          comp[b] = next;
          stack.push_back(b);
        }
      }
    }
    ++next;
  }
  return comp;
}

MethodResult elo(const ResponseTensor& R, double k_factor, double initial) {
  if (k_factor <= 0) throw std::invalid_argument("elo: k_factor must be > 0");
  std::vector<double> rating(R.L(), initial);
  for (const Match& match : match_stream(R)) {
    const double expected_a =
        1.0 / (1.0 + std::pow(10.0, (rating[match.b] - rating[match.a]) / 400.0));
    const double score_a = match.outcome == Match::kAWins   ? 1.0
                           : match.outcome == Match::kBWins ? 0.0
                                                            : 0.5;
    rating[match.a] += k_factor * (score_a - expected_a);
    rating[match.b] += k_factor * ((1.0 - score_a) - (1.0 - expected_a));
  }
  MethodResult r = make_result(rating, optimizer_tie_tolerance(rating));
  return r;
}

void glicko_period(std::vector<double>& rating, std::vector<double>& rd,
                   const std::vector<Match>& matches, const GlickoParams& params) {
  const double q = std::log(10.0) / 400.0;
  const int L = static_cast<int>(rating.size());

  for (double& v : rd) v = std::min(std::sqrt(v * v + params.c * params.c), params.initial_rd);

  const std::vector<double> pre_rating = rating;
  const std::vector<double> pre_rd = rd;
  auto g_of = [&](double dev) { return 1.0 / std::sqrt(1.0 + 3.0 * q * q * dev * dev / (M_PI * M_PI)); };

  std::vector<double> d2_inv(L, 0.0), delta(L, 0.0);
  std::vector<bool> played(L, false);
  auto tally = [&](int player, int opponent, double score) {
    const double g = g_of(pre_rd[opponent]);
    const double e =
        1.0 / (1.0 + std::pow(10.0, -g * (pre_rating[player] - pre_rating[opponent]) / 400.0));
    d2_inv[player] += q * q * g * g * e * (1.0 - e);
    delta[player] += g * (score - e);
    played[player] = true;
  };
  for (const Match& m : matches) {
    const double sa = m.outcome == Match::kAWins ? 1.0 : m.outcome == Match::kBWins ? 0.0 : 0.5;
    tally(m.a, m.b, sa);
    tally(m.b, m.a, 1.0 - sa);
  }

  for (int p = 0; p < L; ++p) {
    if (!played[p]) continue;
    const double denom = 1.0 / (pre_rd[p] * pre_rd[p]) + d2_inv[p];
    rating[p] = pre_rating[p] + q / denom * delta[p];
    rd[p] = std::max(std::sqrt(1.0 / denom), params.rd_floor);
  }
}

MethodResult glicko(const ResponseTensor& R, const GlickoParams& params) {
  if (params.initial_rd <= 0) throw std::invalid_argument("glicko: initial_rd must be > 0");
  if (R.L() < 2) throw std::invalid_argument("glicko: needs at least two systems");
  std::vector<double> rating(R.L(), params.initial_rating);
  std::vector<double> rd(R.L(), params.initial_rd);

  std::vector<Match> period;
  for (int n = 0; n < R.N(); ++n) {
    period.clear();
    for (int m = 0; m < R.M(); ++m)
      for (int a = 0; a < R.L(); ++a)
        for (int b = a + 1; b < R.L(); ++b) {
          const int ra = R(a, m, n), rb = R(b, m, n);
          period.push_back({a, b,
                            ra > rb   ? Match::kAWins
                            : rb > ra ? Match::kBWins
                                      : Match::kDraw});
        }
    glicko_period(rating, rd, period, params);
  }
  MethodResult r = make_result(rating, optimizer_tie_tolerance(rating));
  r.diagnostics["rd"] = std::move(rd);
  return r;
}

MethodResult trueskill(const ResponseTensor& R, const TrueSkillParams& params) {
  if (params.sigma0 <= 0) throw std::invalid_argument("trueskill: sigma0 must be > 0");
  if (!(params.draw_prob >= 0.0 && params.draw_prob < 1.0))
    throw std::invalid_argument("trueskill: draw_prob must be in [0, 1)");
  const int L = R.L();
  std::vector<double> mu(L, params.mu0), var(L, params.sigma0 * params.sigma0);
  const double eps_raw = params.draw_prob > 0
                             ? normal_quantile((params.draw_prob + 1.0) / 2.0) *
                                   std::sqrt(2.0) * params.beta
                             : 0.0;

  auto v_win = [](double t, double eps) {
    const double d = t - eps;
    const double den = normal_cdf(d);
    if (den < 1e-12) return -d;
    return normal_pdf(d) / den;
  };
  auto w_win = [&](double t, double eps) {
    const double d = t - eps;
    const double den = normal_cdf(d);
    if (den < 1e-12) return 1.0;
    const double v = normal_pdf(d) / den;
    return v * (v + d);
  };
  auto v_draw = [](double t, double eps) {
    const double den = normal_cdf(eps - t) - normal_cdf(-eps - t);
    if (den < 1e-12) return t > 0 ? -(t - eps) : -(t + eps);
    return (normal_pdf(-eps - t) - normal_pdf(eps - t)) / den;
  };
  auto w_draw = [&](double t, double eps) {
    const double den = normal_cdf(eps - t) - normal_cdf(-eps - t);
    if (den < 1e-12) return 1.0;
    const double v = v_draw(t, eps);
    return v * v + ((eps - t) * normal_pdf(eps - t) + (eps + t) * normal_pdf(eps + t)) / den;
  };

  for (const Match& match : match_stream(R)) {
    var[match.a] += params.tau_dyn * params.tau_dyn;
    var[match.b] += params.tau_dyn * params.tau_dyn;
    const double c2 = 2 * params.beta * params.beta + var[match.a] + var[match.b];
    const double c = std::sqrt(c2);
    const double eps = eps_raw / c;
    if (match.outcome == Match::kDraw) {
      const double t = (mu[match.a] - mu[match.b]) / c;
      const double w = w_draw(t, eps);
      mu[match.a] += var[match.a] / c * v_draw(t, eps);
      mu[match.b] += var[match.b] / c * v_draw(-t, eps);
      var[match.a] *= std::max(1.0 - var[match.a] / c2 * w, 1e-6);
      var[match.b] *= std::max(1.0 - var[match.b] / c2 * w, 1e-6);
    } else {
      const int win = match.outcome == Match::kAWins ? match.a : match.b;
      const int lose = match.outcome == Match::kAWins ? match.b : match.a;
      const double t = (mu[win] - mu[lose]) / c;
      const double v = v_win(t, eps);
      const double w = w_win(t, eps);
      mu[win] += var[win] / c * v;
      mu[lose] -= var[lose] / c * v;
      var[win] *= std::max(1.0 - var[win] / c2 * w, 1e-6);
      var[lose] *= std::max(1.0 - var[lose] / c2 * w, 1e-6);
    }
  }

  std::vector<double> scores(L), sigmas(L);
  for (int l = 0; l < L; ++l) {
    sigmas[l] = std::sqrt(var[l]);
    scores[l] = mu[l] - 3.0 * sigmas[l];
  }
  MethodResult r = make_result(scores, optimizer_tie_tolerance(scores));
  r.diagnostics["mu"] = std::move(mu);
  r.diagnostics["sigma"] = std::move(sigmas);
  return r;
}

BtMmFit bradley_terry_mm(const Grid<long long>& wins, int max_iter, double tol) {
  Grid<long long> no_ties(wins.rows(), wins.cols(), 0);
  BtFit fit = fit_bt(wins, no_ties, BtVariant::kPlain, max_iter, tol);
  return BtMmFit{std::move(fit.pi), std::move(fit.ll_trace), fit.converged};
}

MethodResult bradley_terry(const ResponseTensor& R, const BtOptions& options) {
  const auto [wins, ties] = counts_of(R);
  const bool use_ties = options.variant != BtVariant::kPlain;
  const std::vector<int> comp = comparison_components(wins, use_ties ? &ties : nullptr);
  if (*std::max_element(comp.begin(), comp.end()) > 0)
    throw std::invalid_argument("bradley_terry: comparison graph is disconnected: " +
                                describe_components(comp));

  BtFit fit = fit_bt(wins, ties, options.variant, options.max_iter, options.tol);
  MethodResult r;
  if (!fit.converged)
    r.notes.push_back("bradley_terry: not converged after " + std::to_string(options.max_iter) +
                      " iterations; returning best iterate");
  if (options.prior) map_refine(wins, ties, options.variant, *options.prior, fit, 200);

  std::vector<double> scores(R.L());
  for (int a = 0; a < R.L(); ++a) scores[a] = std::log(fit.pi[a]);
  r.ranks = rank_views(scores, optimizer_tie_tolerance(scores));
  r.scores = std::move(scores);
  r.diagnostics["log_likelihood_trace"] = std::move(fit.ll_trace);
  if (options.variant != BtVariant::kPlain) r.diagnostics["tie_param"] = {fit.tie_param};
  return r;
}

MethodResult thompson(const ResponseTensor& R, int samples, std::uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("thompson: samples must be > 0");
  const auto [wins, ties] = counts_of(R);
  const int L = R.L();
  RandomSource rng(seed);
  std::vector<double> scores(L, 0.0);
  for (int s = 0; s < samples; ++s)
    for (int a = 0; a < L; ++a)
      for (int b = a + 1; b < L; ++b) {
        const double p = rng.beta(1.0 + static_cast<double>(wins(a, b)),
                                  1.0 + static_cast<double>(wins(b, a)));
        if (p > 0.5)
          scores[a] += 1.0;
        else if (p < 0.5)
          scores[b] += 1.0;
      }
  for (double& v : scores) v /= samples;
  MethodResult r = make_result(scores, optimizer_tie_tolerance(scores));
  r.diagnostics["samples"] = {static_cast<double>(samples)};
  return r;
}

MethodResult bayesian_mcmc(const ResponseTensor& R, const Prior& prior,
                           const McmcOptions& options) {
  if (options.proposal_scale <= 0)
    throw std::invalid_argument("bayesian_mcmc: proposal_scale must be > 0");
  if (options.iterations <= options.burn_in)
    throw std::invalid_argument("bayesian_mcmc: iterations must exceed burn_in");
  const auto [wins, ties] = counts_of(R);
  const int L = R.L();

  auto log_target = [&](const std::vector<double>& lam) {
    double f = 0.0;
    for (int a = 0; a < L; ++a)
      for (int b = a + 1; b < L; ++b) {
        const double wa = static_cast<double>(wins(a, b));
        const double wb = static_cast<double>(wins(b, a));
        if (wa + wb == 0) continue;
        const double hi = std::max(lam[a], lam[b]);
        const double lse = hi + std::log1p(std::exp(-std::abs(lam[a] - lam[b])));
        f += wa * (lam[a] - lse) + wb * (lam[b] - lse);
      }
    for (int a = 1; a < L; ++a) f += prior.log_density(lam[a]);
    return f;
  };

  RandomSource rng(options.seed);
  std::vector<double> lam(L, 0.0), mean(L, 0.0);
  double f = log_target(lam);
  long long accepted = 0, kept = 0;
  for (int iter = 0; iter < options.iterations; ++iter) {
    const int i = 1 + rng.uniform_int(L - 1);
    const double old = lam[i];
    lam[i] = old + options.proposal_scale * rng.normal();
    const double f_new = log_target(lam);
    const double u = rng.uniform01();
    if (std::log(u + 1e-300) < f_new - f) {
      f = f_new;
      ++accepted;
    } else {
      lam[i] = old;
    }
    if (iter >= options.burn_in) {
      for (int a = 0; a < L; ++a) mean[a] += lam[a];
      ++kept;
    }
  }
  for (double& v : mean) v /= static_cast<double>(kept);
  const double center = std::accumulate(mean.begin(), mean.end(), 0.0) / L;
  for (double& v : mean) v -= center;

  MethodResult r = make_result(mean, optimizer_tie_tolerance(mean));
  r.diagnostics["acceptance_rate"] = {static_cast<double>(accepted) / options.iterations};
  return r;
}

}  // namespace ranklab
