#include "ranklab/latent_methods.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "ranklab/pairwise_methods.hpp"

namespace ranklab {
namespace {

constexpr double kAbilityClamp = 6.0;
constexpr double kPiFloor = 1e-300;

Grid<int> binary_successes(const ResponseTensor& R) {
  if (R.C() != 1)
    throw std::invalid_argument("IRT methods need binary outcomes (C = 1)");
  if (R.L() < 2 || R.M() < 2)
    throw std::invalid_argument("IRT methods need at least two systems and two tasks");
  return top_category_counts(R);
}

double clamp_ability(double x) { return std::clamp(x, -kAbilityClamp, kAbilityClamp); }

// ---- Rasch JML ----

struct JmlFit {
  std::vector<double> theta, b;
  bool clamped = false;
};

JmlFit fit_rasch_jml(const Grid<int>& s, int N, int max_iter, double tol) {
  const int L = s.rows(), M = s.cols();
  JmlFit fit;
  fit.theta.assign(L, 0.0);
  fit.b.assign(M, 0.0);

  for (int iter = 0; iter < max_iter; ++iter) {
    double delta = 0.0;
    for (int l = 0; l < L; ++l) {
      double g = 0.0, h = 0.0;
      for (int m = 0; m < M; ++m) {
        const double p = logistic(fit.theta[l] - fit.b[m]);
        g += s(l, m) - N * p;
        h += N * p * (1.0 - p);
      }
      const double step = g / (h + 1e-9);
      const double nt = clamp_ability(fit.theta[l] + step);
      delta = std::max(delta, std::abs(nt - fit.theta[l]));
      fit.theta[l] = nt;
    }
    for (int m = 0; m < M; ++m) {
      double g = 0.0, h = 0.0;
      for (int l = 0; l < L; ++l) {
        const double p = logistic(fit.theta[l] - fit.b[m]);
        g += N * p - s(l, m);
        h += N * p * (1.0 - p);
      }
      const double step = g / (h + 1e-9);
      const double nb = clamp_ability(fit.b[m] + step);
      delta = std::max(delta, std::abs(nb - fit.b[m]));
      fit.b[m] = nb;
    }
    if (delta < tol) break;
  }

  for (double v : fit.theta)
    if (std::abs(v) >= kAbilityClamp - 1e-9) fit.clamped = true;
  for (double v : fit.b)
    if (std::abs(v) >= kAbilityClamp - 1e-9) fit.clamped = true;

  // Identifiability gauge: difficulties mean zero.
  const double shift = std::accumulate(fit.b.begin(), fit.b.end(), 0.0) / M;
  for (double& v : fit.b) v -= shift;
  for (double& v : fit.theta) v -= shift;
  return fit;
}

// ---- Marginal models (MML / 2PL / 3PL) ----

struct ItemParams {
  std::vector<double> a, b, c;  // discrimination, difficulty, guessing
};

double item_prob(const ItemParams& it, int m, double theta) {
  const double base = logistic(it.a[m] * (theta - it.b[m]));
  return it.c[m] + (1.0 - it.c[m]) * base;
}

// Posterior responsibilities over quadrature nodes, returned row-major L x Q.
Grid<double> e_step(const Grid<int>& s, int N, const ItemParams& it, const GaussHermite& gh) {
  const int L = s.rows(), M = s.cols(), Q = static_cast<int>(gh.nodes.size());
  Grid<double> r(L, Q, 0.0);
  std::vector<double> logw(Q);
  for (int l = 0; l < L; ++l) {
    double peak = -1e308;
    for (int q = 0; q < Q; ++q) {
      double lp = std::log(gh.weights[q]);
      for (int m = 0; m < M; ++m) {
        const double p = std::clamp(item_prob(it, m, gh.nodes[q]), 1e-12, 1.0 - 1e-12);
        lp += s(l, m) * std::log(p) + (N - s(l, m)) * std::log1p(-p);
      }
      logw[q] = lp;
      peak = std::max(peak, lp);
    }
    double total = 0.0;
    for (int q = 0; q < Q; ++q) total += std::exp(logw[q] - peak);
    for (int q = 0; q < Q; ++q) r(l, q) = std::exp(logw[q] - peak) / total;
  }
  return r;
}

// One-dimensional Newton root of the Rasch M-step score for task m.
void mml_update_difficulty(const Grid<int>& s, int N, ItemParams& it, const GaussHermite& gh,
                           const Grid<double>& r, int m) {
  for (int step = 0; step < 8; ++step) {
    double g = 0.0, h = 0.0;
    for (int l = 0; l < s.rows(); ++l)
      for (int q = 0; q < static_cast<int>(gh.nodes.size()); ++q) {
        const double p = logistic(gh.nodes[q] - it.b[m]);
        g += r(l, q) * (N * p - s(l, m));
        h += r(l, q) * N * p * (1.0 - p);
      }
    const double move = g / (h + 1e-9);
    it.b[m] = clamp_ability(it.b[m] + move);
    if (std::abs(move) < 1e-10) break;
  }
}

// Armijo ascent on (log a_m, b_m, c_m) for the 2PL/3PL M-step of task m.
void slope_update_item(const Grid<int>& s, int N, ItemParams& it, const GaussHermite& gh,
                       const Grid<double>& r, int m, bool fit_guessing) {
  const int L = s.rows(), Q = static_cast<int>(gh.nodes.size());
  auto q_of = [&](double a, double b, double c) {
    double acc = 0.0;
    for (int l = 0; l < L; ++l)
      for (int q = 0; q < Q; ++q) {
        const double base = logistic(a * (gh.nodes[q] - b));
        const double p = std::clamp(c + (1.0 - c) * base, 1e-12, 1.0 - 1e-12);
        acc += r(l, q) * (s(l, m) * std::log(p) + (N - s(l, m)) * std::log1p(-p));
      }
    return acc;
  };

  double alpha = std::log(it.a[m]);
  double b = it.b[m], c = it.c[m];
  double f = q_of(it.a[m], b, c);
  for (int iter = 0; iter < 6; ++iter) {
    double ga = 0.0, gb = 0.0, gc = 0.0;
    const double a = std::exp(alpha);
    for (int l = 0; l < L; ++l)
      for (int q = 0; q < Q; ++q) {
        const double u = a * (gh.nodes[q] - b);
        const double base = logistic(u);
        const double p = std::clamp(c + (1.0 - c) * base, 1e-12, 1.0 - 1e-12);
        const double dq_dp = s(l, m) / p - (N - s(l, m)) / (1.0 - p);
        const double dbase = base * (1.0 - base);
        ga += r(l, q) * dq_dp * (1.0 - c) * dbase * u;  // d/d alpha via chain rule
        gb += r(l, q) * dq_dp * (1.0 - c) * dbase * (-a);
        if (fit_guessing) gc += r(l, q) * dq_dp * (1.0 - base);
      }
    double norm2 = ga * ga + gb * gb + gc * gc;
    if (norm2 < 1e-16) break;

    double step = 0.5;
    bool moved = false;
    for (int back = 0; back < 25; ++back) {
      const double na = std::clamp(alpha + step * ga, std::log(0.05), std::log(20.0));
      const double nb = clamp_ability(b + step * gb);
      const double nc = fit_guessing ? std::clamp(c + step * gc, 0.0, 0.35) : c;
      const double fc = q_of(std::exp(na), nb, nc);
      if (fc > f) {
        alpha = na;
        b = nb;
        c = nc;
        f = fc;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  it.a[m] = std::exp(alpha);
  it.b[m] = b;
  it.c[m] = c;
}

MethodResult fit_marginal(const Grid<int>& s, int N, IrtModel model, const IrtOptions& opt) {
  const int L = s.rows(), M = s.cols();
  const GaussHermite gh = gauss_hermite_normal(opt.quadrature_nodes);
  ItemParams it{std::vector<double>(M, 1.0), std::vector<double>(M, 0.0),
                std::vector<double>(M, 0.0)};
  if (model == IrtModel::kRasch3pl) std::fill(it.c.begin(), it.c.end(), 0.1);

  Grid<double> r;
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    r = e_step(s, N, it, gh);
    const std::vector<double> prev = it.b;
    for (int m = 0; m < M; ++m) {
      if (model == IrtModel::kRaschMml)
        mml_update_difficulty(s, N, it, gh, r, m);
      else
        slope_update_item(s, N, it, gh, r, m, model == IrtModel::kRasch3pl);
    }
    double delta = 0.0;
    for (int m = 0; m < M; ++m) delta = std::max(delta, std::abs(it.b[m] - prev[m]));
    if (delta < opt.tol) break;
  }

  r = e_step(s, N, it, gh);
  std::vector<double> theta(L, 0.0);
  for (int l = 0; l < L; ++l)
    for (int q = 0; q < static_cast<int>(gh.nodes.size()); ++q)
      theta[l] += r(l, q) * gh.nodes[q];

  MethodResult out = make_result(theta, optimizer_tie_tolerance(theta));
  out.diagnostics["difficulty"] = it.b;
  if (model != IrtModel::kRaschMml) out.diagnostics["discrimination"] = it.a;
  if (model == IrtModel::kRasch3pl) out.diagnostics["guessing"] = it.c;
  return out;
}

// ---- Dynamic Rasch: per-trial abilities with a random-walk drift penalty ----

MethodResult fit_dynamic(const ResponseTensor& R, const IrtOptions& opt) {
  const int L = R.L(), M = R.M(), N = R.N();
  Grid<int> s(L * N, M, 0);  // successes per (system, trial) row
  for (int l = 0; l < L; ++l)
    for (int n = 0; n < N; ++n)
      for (int m = 0; m < M; ++m) s(l * N + n, m) += R(l, m, n);

  Grid<double> theta(L, N, 0.0);
  std::vector<double> b(M, 0.0);

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    double delta = 0.0;
    for (int l = 0; l < L; ++l)
      for (int n = 0; n < N; ++n) {
        double g = 0.0, h = 1e-9;
        for (int m = 0; m < M; ++m) {
          const double p = logistic(theta(l, n) - b[m]);
          g += s(l * N + n, m) - p;
          h += p * (1.0 - p);
        }
        if (n > 0) {
          g -= 2.0 * opt.kappa * (theta(l, n) - theta(l, n - 1));
          h += 2.0 * opt.kappa;
        }
        if (n + 1 < N) {
          g -= 2.0 * opt.kappa * (theta(l, n) - theta(l, n + 1));
          h += 2.0 * opt.kappa;
        }
        const double nt = clamp_ability(theta(l, n) + g / h);
        delta = std::max(delta, std::abs(nt - theta(l, n)));
        theta(l, n) = nt;
      }
    for (int m = 0; m < M; ++m) {
      double g = 0.0, h = 1e-9;
      for (int l = 0; l < L; ++l)
        for (int n = 0; n < N; ++n) {
          const double p = logistic(theta(l, n) - b[m]);
          g += p - s(l * N + n, m);
          h += p * (1.0 - p);
        }
      const double nb = clamp_ability(b[m] + g / h);
      delta = std::max(delta, std::abs(nb - b[m]));
      b[m] = nb;
    }
    if (delta < opt.tol) break;
  }

  const double shift = std::accumulate(b.begin(), b.end(), 0.0) / M;
  for (double& v : b) v -= shift;
  std::vector<double> scores(L), first(L);
  for (int l = 0; l < L; ++l) {
    scores[l] = theta(l, N - 1) - shift;
    first[l] = theta(l, 0) - shift;
  }
  MethodResult out = make_result(scores, optimizer_tie_tolerance(scores));
  out.diagnostics["difficulty"] = std::move(b);
  out.diagnostics["theta_first_trial"] = std::move(first);
  return out;
}

// ---- Listwise helpers ----

struct StrictOrders {
  std::vector<int> items;                       // concatenated orders
  std::vector<std::pair<int, int>> spans;       // [start, end) per ballot copy
  std::vector<double> weights;                  // per-span likelihood weight
};

// A single uniform tie-break is an unbiased but high-variance stand-in for the
// tied ballot; averaging the likelihood over several seeded tie-breaks keeps
// rankings from hinging on one draw. Ballots without tied groups need no
// copies, so they enter once at full weight.
constexpr int kTieBreakReplicates = 16;

StrictOrders tie_broken_orders(const BallotList& bl, std::uint64_t seed,
                               int replicates = kTieBreakReplicates) {
  RandomSource rng(seed);
  StrictOrders so;
  so.items.reserve(bl.items.size());
  int pos = 0;
  for (const auto& [gs, ge] : bl.ballots) {
    int width = 0;
    bool tied = false;
    for (int g = gs; g < ge; ++g) {
      width += bl.group_sizes[g];
      if (bl.group_sizes[g] > 1) tied = true;
    }
    if (ge - gs < 2) {  // single tie group carries no preference information
      pos += width;
      continue;
    }
    const int copies = tied ? replicates : 1;
    for (int c = 0; c < copies; ++c) {
      const int start = static_cast<int>(so.items.size());
      int p = pos;
      for (int g = gs; g < ge; ++g) {
        const int size = bl.group_sizes[g];
        const int group_start = static_cast<int>(so.items.size());
        for (int k = 0; k < size; ++k) so.items.push_back(bl.items[p++]);
        if (size > 1)
          rng.shuffle(
              std::span<int>(so.items.data() + group_start, static_cast<std::size_t>(size)));
      }
      so.spans.emplace_back(start, static_cast<int>(so.items.size()));
      so.weights.push_back(1.0 / copies);
    }
    pos += width;
  }
  return so;
}

struct PlFit {
  std::vector<double> pi;
  std::vector<double> ll_trace;
  bool converged = false;
};

// Kahan-Babuska compensated accumulator. Near convergence the per-iteration
// likelihood gain sits below the rounding noise of a naive sum over the
// ballot terms, which would let the recorded trace wobble downward.
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

PlFit fit_plackett_luce(const StrictOrders& so, int L, int max_iter, double tol) {
  PlFit fit;
  fit.pi.assign(L, 1.0 / L);
  std::vector<double> wins(L, 0.0), denom(L), suffix, prefix;
  for (std::size_t b = 0; b < so.spans.size(); ++b) {
    const auto [s, e] = so.spans[b];
    for (int u = s; u + 1 < e; ++u) wins[so.items[u]] += so.weights[b];
  }

  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(denom.begin(), denom.end(), 0.0);
    CompensatedSum ll;
    for (std::size_t b = 0; b < so.spans.size(); ++b) {
      const auto [s, e] = so.spans[b];
      const double w = so.weights[b];
      const int J = e - s;
      suffix.assign(J, 0.0);
      double acc = 0.0;
      for (int u = J - 1; u >= 0; --u) {
        acc += fit.pi[so.items[s + u]];
        suffix[u] = acc;
      }
      prefix.assign(J - 1, 0.0);
      double run = 0.0;
      for (int t = 0; t + 1 < J; ++t) {
        run += 1.0 / suffix[t];
        prefix[t] = run;
        ll.add(w * (std::log(fit.pi[so.items[s + t]]) - std::log(suffix[t])));
      }
      for (int u = 0; u < J; ++u)
        denom[so.items[s + u]] += w * prefix[std::min(u, J - 2)];
    }
    fit.ll_trace.push_back(ll.value());

    double total = 0.0, delta = 0.0;
    std::vector<double> next(L);
    for (int i = 0; i < L; ++i) {
      next[i] = denom[i] > 0 ? std::max(wins[i] / denom[i], kPiFloor) : fit.pi[i];
      total += next[i];
    }
    for (int i = 0; i < L; ++i) {
      next[i] /= total;
      delta = std::max(delta, std::abs(std::log(next[i] / fit.pi[i])));
    }
    fit.pi = std::move(next);
    if (delta < tol) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

// Stagewise tied-group choice model: a group of size t is chosen from the
// remaining alternatives with probability proportional to
// delta_t * (product of its worths)^(1/t).
struct GroupedBallots {
  std::vector<int> items;
  std::vector<int> group_sizes;
  std::vector<std::pair<int, int>> ballots;  // spans into group_sizes
  std::vector<std::pair<int, int>> item_spans;
  std::vector<int> sizes_present;            // chosen-group sizes >= 2
  int max_size = 1;
};

GroupedBallots informative_ballots(const BallotList& bl) {
  GroupedBallots gb;
  std::vector<bool> seen(static_cast<std::size_t>(bl.L) + 1, false);
  int pos = 0;
  for (const auto& [gs, ge] : bl.ballots) {
    int width = 0;
    for (int g = gs; g < ge; ++g) width += bl.group_sizes[g];
    if (ge - gs < 2) {
      pos += width;
      continue;
    }
    const int group_start = static_cast<int>(gb.group_sizes.size());
    const int item_start = static_cast<int>(gb.items.size());
    for (int g = gs; g < ge; ++g) {
      gb.group_sizes.push_back(bl.group_sizes[g]);
      if (g + 1 < ge) seen[static_cast<std::size_t>(bl.group_sizes[g])] = true;
    }
    for (int k = 0; k < width; ++k) gb.items.push_back(bl.items[pos++]);
    gb.ballots.emplace_back(group_start, static_cast<int>(gb.group_sizes.size()));
    gb.item_spans.emplace_back(item_start, static_cast<int>(gb.items.size()));
  }
  for (int t = 2; t <= bl.L; ++t)
    if (seen[static_cast<std::size_t>(t)]) {
      gb.sizes_present.push_back(t);
      gb.max_size = t;
    }
  return gb;
}

// Sum over all size-t subsets of the worth products^(1/t), via the
// elementary symmetric polynomial of the rescaled worths.
double subset_mass(const std::vector<double>& pi, const std::vector<int>& members, int t) {
  if (t > static_cast<int>(members.size())) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(t) + 1, 0.0);
  e[0] = 1.0;
  for (int idx : members) {
    const double x = std::pow(pi[idx], 1.0 / t);
    for (int j = t; j >= 1; --j) e[j] += e[j - 1] * x;
  }
  return e[t];
}

double davidson_luce_ll(const GroupedBallots& gb, const std::vector<double>& pi,
                        const std::vector<double>& delta_log) {
  auto delta_of = [&](int t) {
    if (t == 1) return 0.0;
    for (std::size_t i = 0; i < gb.sizes_present.size(); ++i)
      if (gb.sizes_present[i] == t) return delta_log[i];
    return -1e9;  // sizes absent from the model get negligible mass
  };

  double ll = 0.0;
  std::vector<int> remaining;
  for (std::size_t bi = 0; bi < gb.ballots.size(); ++bi) {
    const auto [gs, ge] = gb.ballots[bi];
    const auto [is, ie] = gb.item_spans[bi];
    remaining.assign(gb.items.begin() + is, gb.items.begin() + ie);
    int item_pos = is;
    for (int g = gs; g + 1 < ge; ++g) {
      const int t = gb.group_sizes[g];
      double numer = delta_of(t);
      for (int k = 0; k < t; ++k) numer += std::log(pi[gb.items[item_pos + k]]) / t;

      double peak = -1e308;
      std::vector<double> terms;
      terms.reserve(gb.sizes_present.size() + 1);
      {
        const double mass1 = subset_mass(pi, remaining, 1);
        terms.push_back(std::log(mass1));
        peak = std::max(peak, terms.back());
      }
      for (int t2 : gb.sizes_present) {
        if (t2 > static_cast<int>(remaining.size())) continue;
        const double mass = subset_mass(pi, remaining, t2);
        if (mass <= 0) continue;
        terms.push_back(delta_of(t2) + std::log(mass));
        peak = std::max(peak, terms.back());
      }
      double total = 0.0;
      for (double v : terms) total += std::exp(v - peak);
      ll += numer - (peak + std::log(total));

      for (int k = 0; k < t; ++k) {
        const int chosen = gb.items[item_pos + k];
        remaining.erase(std::find(remaining.begin(), remaining.end(), chosen));
      }
      item_pos += t;
    }
  }
  return ll;
}

PlFit fit_davidson_luce(const GroupedBallots& gb, int L, int max_iter) {
  std::vector<double> lambda(L, 0.0);
  std::vector<double> delta_log(gb.sizes_present.size(), 0.0);
  const int P = L + static_cast<int>(delta_log.size());

  auto objective = [&](const std::vector<double>& lam, const std::vector<double>& dl) {
    std::vector<double> pi(L);
    double total = 0.0;
    for (int i = 0; i < L; ++i) total += std::exp(lam[i]);
    for (int i = 0; i < L; ++i) pi[i] = std::exp(lam[i]) / total;
    return davidson_luce_ll(gb, pi, dl);
  };

  PlFit fit;
  double f = objective(lambda, delta_log);
  fit.ll_trace.push_back(f);
  const double h = 1e-5;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<double> g(P, 0.0);
    for (int p = 0; p < P; ++p) {
      auto lam = lambda;
      auto dl = delta_log;
      double* slot = p < L ? &lam[p] : &dl[p - L];
      *slot += h;
      const double fp = objective(lam, dl);
      *slot -= 2 * h;
      const double fm = objective(lam, dl);
      g[p] = (fp - fm) / (2 * h);
    }
    double gmean = 0.0;
    for (int i = 0; i < L; ++i) gmean += g[i];
    gmean /= L;
    for (int i = 0; i < L; ++i) g[i] -= gmean;  // sum-zero gauge on log-worths
    double norm2 = 0.0;
    for (double v : g) norm2 += v * v;
    if (std::sqrt(norm2) < 1e-8) {
      fit.converged = true;
      break;
    }

    double step = 1.0;
    bool moved = false;
    for (int back = 0; back < 30; ++back) {
      auto lam = lambda;
      auto dl = delta_log;
      for (int i = 0; i < L; ++i) lam[i] += step * g[i];
      for (std::size_t i = 0; i < dl.size(); ++i) dl[i] += step * g[L + i];
      const double fc = objective(lam, dl);
      if (fc >= f + 1e-4 * step * norm2) {
        lambda = std::move(lam);
        delta_log = std::move(dl);
        f = fc;
        fit.ll_trace.push_back(f);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      fit.converged = true;
      break;
    }
  }

  fit.pi.assign(L, 0.0);
  double total = 0.0;
  for (int i = 0; i < L; ++i) total += std::exp(lambda[i]);
  for (int i = 0; i < L; ++i) fit.pi[i] = std::exp(lambda[i]) / total;
  return fit;
}

MethodResult listwise_total_tie(int L) {
  MethodResult r = make_result(std::vector<double>(L, std::log(1.0 / L)));
  r.notes.push_back("no ballot orders any pair of systems; returning a total tie");
  return r;
}

}  // namespace

double rasch_joint_log_likelihood(const Grid<int>& successes, int trials,
                                  const std::vector<double>& theta,
                                  const std::vector<double>& b) {
  double ll = 0.0;
  for (int l = 0; l < successes.rows(); ++l)
    for (int m = 0; m < successes.cols(); ++m) {
      const double u = theta[l] - b[m];
      ll += successes(l, m) * u - trials * log1pexp(u);
    }
  return ll;
}

void rasch_joint_gradient(const Grid<int>& successes, int trials,
                          const std::vector<double>& theta, const std::vector<double>& b,
                          std::vector<double>& g_theta, std::vector<double>& g_b) {
  g_theta.assign(theta.size(), 0.0);
  g_b.assign(b.size(), 0.0);
  for (int l = 0; l < successes.rows(); ++l)
    for (int m = 0; m < successes.cols(); ++m) {
      const double p = logistic(theta[l] - b[m]);
      const double resid = successes(l, m) - trials * p;
      g_theta[l] += resid;
      g_b[m] -= resid;
    }
}

GaussHermite gauss_hermite_normal(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite_normal: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = std::sqrt(k / 2.0);
    jacobi(k, k - 1) = off;
    jacobi(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_hermite_normal: eigensolver failed");

  GaussHermite gh;
  gh.nodes.resize(n);
  gh.weights.resize(n);
  for (int q = 0; q < n; ++q) {
    // Physicists' nodes are rescaled by sqrt(2) for a standard normal; the
    // first eigenvector component squared gives the weight relative to the
    // total mass, so normal weights need no extra constant.
    gh.nodes[q] = es.eigenvalues()(q) * std::sqrt(2.0);
    const double v0 = es.eigenvectors()(0, q);
    gh.weights[q] = v0 * v0;
  }
  return gh;
}

MethodResult irt_fit(const ResponseTensor& R, IrtModel model, const IrtOptions& options) {
  if (model == IrtModel::kDynamic) {
    binary_successes(R);  // validates binary input
    return fit_dynamic(R, options);
  }
  const Grid<int> s = binary_successes(R);
  if (model == IrtModel::kRaschJml) {
    JmlFit fit = fit_rasch_jml(s, R.N(), options.max_iter, options.tol);
    MethodResult out = make_result(fit.theta, optimizer_tie_tolerance(fit.theta));
    out.diagnostics["difficulty"] = std::move(fit.b);
    if (fit.clamped)
      out.notes.push_back("perfect or zero score patterns clamped at +/-" +
                          std::to_string(kAbilityClamp) + " logits");
    return out;
  }
  return fit_marginal(s, R.N(), model, options);
}

MethodResult listwise_fit(const ResponseTensor& R, ListwiseModel model,
                          const ListwiseOptions& options) {
  if (R.L() < 2) throw std::invalid_argument("listwise_fit: needs at least two systems");
  const BallotList bl = ballots(R);

  if (model == ListwiseModel::kBradleyTerryLuce) {
    const Grid<long long> pref = preference_matrix(bl);
    const std::vector<int> comp = comparison_components(pref, nullptr);
    if (*std::max_element(comp.begin(), comp.end()) > 0) {
      bool any_edge = false;
      for (int a = 0; a < R.L() && !any_edge; ++a)
        for (int b = 0; b < R.L(); ++b)
          if (pref(a, b) > 0) {
            any_edge = true;
            break;
          }
      if (!any_edge) return listwise_total_tie(R.L());
      throw std::invalid_argument("bradley_terry_luce: preference graph is disconnected");
    }
    BtMmFit fit = bradley_terry_mm(pref, options.max_iter, options.tol);
    double total = std::accumulate(fit.pi.begin(), fit.pi.end(), 0.0);
    std::vector<double> scores(R.L());
    for (int i = 0; i < R.L(); ++i) scores[i] = std::log(fit.pi[i] / total);
    MethodResult out;
    if (!fit.converged)
      out.notes.push_back("bradley_terry_luce: not converged; returning best iterate");
    out.ranks = rank_views(scores, optimizer_tie_tolerance(scores));
    out.scores = std::move(scores);
    out.diagnostics["log_likelihood_trace"] = std::move(fit.ll_trace);
    return out;
  }

  if (model == ListwiseModel::kPlackettLuce) {
    const StrictOrders so = tie_broken_orders(bl, options.seed);
    if (so.spans.empty()) return listwise_total_tie(R.L());
    PlFit fit = fit_plackett_luce(so, R.L(), options.max_iter, options.tol);
    std::vector<double> scores(R.L());
    for (int i = 0; i < R.L(); ++i) scores[i] = std::log(fit.pi[i]);
    MethodResult out;
    if (!fit.converged)
      out.notes.push_back("plackett_luce: not converged; returning best iterate");
    out.ranks = rank_views(scores, optimizer_tie_tolerance(scores));
    out.scores = std::move(scores);
    out.diagnostics["worth"] = std::move(fit.pi);
    out.diagnostics["log_likelihood_trace"] = std::move(fit.ll_trace);
    return out;
  }

  const GroupedBallots gb = informative_ballots(bl);
  if (gb.ballots.empty()) return listwise_total_tie(R.L());
  PlFit fit = fit_davidson_luce(gb, R.L(), options.max_iter);
  std::vector<double> scores(R.L());
  for (int i = 0; i < R.L(); ++i) scores[i] = std::log(fit.pi[i]);
  MethodResult out;
  if (!fit.converged)
    out.notes.push_back("davidson_luce: not converged; returning best iterate");
  out.ranks = rank_views(scores, optimizer_tie_tolerance(scores));
  out.scores = std::move(scores);
  out.diagnostics["worth"] = std::move(fit.pi);
  out.diagnostics["log_likelihood_trace"] = std::move(fit.ll_trace);
  return out;
}

}  // namespace ranklab
