#include "ranklab/social_graph_methods.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <Eigen/Dense>

#include "ranklab/pairwise_methods.hpp"

namespace ranklab {
namespace {

// ---- positional counts ----

std::vector<double> borda_points(const BallotList& bl) {
  const int L = bl.L;
  std::vector<double> pts(L, 0.0);
  int pos = 0;
  for (const auto& [gs, ge] : bl.ballots) {
    int place = 1;  // 1-based position within this ballot
    for (int g = gs; g < ge; ++g) {
      const int size = bl.group_sizes[g];
      const double value = L - place - (size - 1) * 0.5;
      for (int k = 0; k < size; ++k) pts[bl.items[pos + k]] += value;
      pos += size;
      place += size;
    }
  }
  return pts;
}

// Doubled Borda points restricted to the alive set, so ties stay integral.
std::vector<long long> restricted_borda2(const BallotList& bl, const std::vector<char>& alive,
                                         int n_alive) {
  std::vector<long long> pts(bl.L, 0);
  int pos = 0;
  for (const auto& [gs, ge] : bl.ballots) {
    int place = 1;
    for (int g = gs; g < ge; ++g) {
      const int size = bl.group_sizes[g];
      int present = 0;
      for (int k = 0; k < size; ++k) present += alive[bl.items[pos + k]];
      if (present > 0) {
        const long long value = 2LL * n_alive - (2LL * place + present - 1);
        for (int k = 0; k < size; ++k)
          if (alive[bl.items[pos + k]]) pts[bl.items[pos + k]] += value;
        place += present;
      }
      pos += size;
    }
  }
  return pts;
}

MethodResult borda_rule(const BallotList& bl) { return make_result(borda_points(bl)); }

}  // namespace

MethodResult borda(const ResponseTensor& R) {
  if (R.L() < 2) throw std::invalid_argument("ballots: needs at least two systems");
  const int L = R.L();
  const int C = R.C();
  const std::size_t cells = static_cast<std::size_t>(R.M()) * R.N();
  const int* base = R.data().data();
  std::vector<double> pts(L, 0.0);

  // Points for a system whose ballot group has B systems strictly below and
  // size s: B + (s-1)/2, the same addend borda_points derives from places.
  // Accumulated in half-units so every partial sum stays exact and matches
  // the ballot-order summation of vote(kBorda) bit for bit.
  if (C == 1) {
    // Binary outcomes collapse: with k successes in a cell, the doubled
    // addend is (L-k-1) for a failure and (L-k-1) + L for a success, so the
    // doubled total is a shared constant plus L times the success count.
    long long shared = 0;
    for (std::size_t i = 0; i < cells; ++i) {
      int k = 0;
      for (int l = 0; l < L; ++l) k += base[l * cells + i];
      shared += L - k - 1;
    }
    for (int l = 0; l < L; ++l) {
      const int* row = base + l * cells;
      long long wins = 0;
      for (std::size_t i = 0; i < cells; ++i) wins += row[i];
      pts[l] = 0.5 * static_cast<double>(shared + static_cast<long long>(L) * wins);
    }
  } else if (C + 1 <= 16) {
    // Histogram per ballot in level-major scratch, then stream each system.
    const int W = C + 1;
    std::vector<int> hist(cells * W, 0);
    for (int l = 0; l < L; ++l) {
      const int* row = base + l * cells;
      for (std::size_t i = 0; i < cells; ++i) ++hist[i * W + row[i]];
    }
    std::vector<long long> half(L, 0);
    std::vector<int> below(W);
    for (std::size_t i = 0; i < cells; ++i) {
      int acc = 0;
      int* h = hist.data() + i * W;
      for (int o = 0; o < W; ++o) {
        below[o] = acc;
        acc += h[o];
        h[o] = 2 * below[o] + h[o] - 1;  // doubled points for level o
      }
    }
    for (int l = 0; l < L; ++l) {
      const int* row = base + l * cells;
      long long s = 0;
      for (std::size_t i = 0; i < cells; ++i) s += hist[i * W + row[i]];
      half[l] = s;
    }
    for (int l = 0; l < L; ++l) pts[l] = 0.5 * static_cast<double>(half[l]);
  } else {
    std::vector<int> count(C + 1, 0), outc(L);
    std::vector<int> below(C + 1, 0);
    for (std::size_t i = 0; i < cells; ++i) {
      for (int l = 0; l < L; ++l) {
        outc[l] = base[l * cells + i];
        ++count[outc[l]];
      }
      int acc = 0;
      for (int o = 0; o <= C; ++o) {
        below[o] = acc;
        acc += count[o];
      }
      for (int l = 0; l < L; ++l)
        pts[l] += below[outc[l]] + (count[outc[l]] - 1) * 0.5;
      for (int l = 0; l < L; ++l) count[outc[l]] = 0;
    }
  }
  return make_result(pts);
}

namespace {

MethodResult elimination_rule(const BallotList& bl, bool below_average) {
  const int L = bl.L;
  std::vector<char> alive(L, 1);
  std::vector<double> scores(L, 0.0);
  int n_alive = L;
  for (int round = 1; n_alive > 0; ++round) {
    const std::vector<long long> pts = restricted_borda2(bl, alive, n_alive);
    std::vector<int> out;
    if (below_average) {
      long long total = 0;
      for (int i = 0; i < L; ++i)
        if (alive[i]) total += pts[i];
      for (int i = 0; i < L; ++i)
        if (alive[i] && pts[i] * n_alive < total) out.push_back(i);
    } else {
      long long low = 0;
      bool first = true;
      for (int i = 0; i < L; ++i)
        if (alive[i] && (first || pts[i] < low)) {
          low = pts[i];
          first = false;
        }
      for (int i = 0; i < L; ++i)
        if (alive[i] && pts[i] == low) out.push_back(i);
    }
    if (out.empty() || static_cast<int>(out.size()) == n_alive) {
      for (int i = 0; i < L; ++i)
        if (alive[i]) scores[i] = round;
      break;
    }
    for (int i : out) {
      scores[i] = round;
      alive[i] = 0;
    }
    n_alive -= static_cast<int>(out.size());
  }
  return make_result(scores);
}

// ---- Condorcet rules on the preference matrix ----

MethodResult copeland_rule(const Grid<long long>& pref) {
  const int L = pref.rows();
  std::vector<double> scores(L, 0.0);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      if (a == b) continue;
      if (pref(a, b) > pref(b, a))
        scores[a] += 1.0;
      else if (pref(a, b) < pref(b, a))
        scores[a] -= 1.0;
    }
  return make_result(scores);
}

MethodResult schulze_rule(const Grid<long long>& pref) {
  const int L = pref.rows();
  Grid<long long> p(L, L, 0);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      if (a != b && pref(a, b) > pref(b, a)) p(a, b) = pref(a, b);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      if (i == j) continue;
      for (int k = 0; k < L; ++k)
        if (k != i && k != j) p(j, k) = std::max(p(j, k), std::min(p(j, i), p(i, k)));
    }
  std::vector<double> scores(L, 0.0);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      if (a != b && p(a, b) > p(b, a)) scores[a] += 1.0;
  return make_result(scores);
}

MethodResult ranked_pairs_rule(const Grid<long long>& pref) {
  const int L = pref.rows();
  struct Pair {
    long long margin;
    int winner, loser;
  };
  std::vector<Pair> majorities;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      if (a != b && pref(a, b) > pref(b, a)) majorities.push_back({pref(a, b) - pref(b, a), a, b});
  std::sort(majorities.begin(), majorities.end(), [](const Pair& x, const Pair& y) {
    if (x.margin != y.margin) return x.margin > y.margin;
    if (x.winner != y.winner) return x.winner < y.winner;
    return x.loser < y.loser;
  });

  std::vector<std::vector<char>> locked(L, std::vector<char>(L, 0));
  auto reaches = [&](int from, int to) {
    std::vector<char> seen(L, 0);
    std::function<bool(int)> dfs = [&](int v) {
      if (v == to) return true;
      seen[v] = 1;
      for (int w = 0; w < L; ++w)
        if (locked[v][w] && !seen[w] && dfs(w)) return true;
      return false;
    };
    return dfs(from);
  };
  for (const Pair& pr : majorities)
    if (!reaches(pr.loser, pr.winner)) locked[pr.winner][pr.loser] = 1;

  std::vector<int> depth(L, -1);
  std::function<int(int)> depth_of = [&](int v) {
    if (depth[v] >= 0) return depth[v];
    int d = 0;
    for (int u = 0; u < L; ++u)
      if (locked[u][v]) d = std::max(d, depth_of(u) + 1);
    return depth[v] = d;
  };
  std::vector<double> scores(L);
  for (int v = 0; v < L; ++v) scores[v] = L - depth_of(v);
  return make_result(scores);
}

MethodResult kemeny_rule(const Grid<long long>& pref) {
  const int L = pref.rows();
  if (L > 8)
    throw capability_error("kemeny_young requires L <= 8 (factorial search); got L = " +
                           std::to_string(L));
  std::vector<int> perm(L), best(L);
  std::iota(perm.begin(), perm.end(), 0);
  best = perm;
  long long best_cost = -1;
  do {
    long long cost = 0;
    for (int i = 0; i < L; ++i)
      for (int j = i + 1; j < L; ++j) cost += pref(perm[j], perm[i]);
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<double> scores(L);
  for (int i = 0; i < L; ++i) scores[best[i]] = L - (i + 1);
  return make_result(scores);
}

// ---- win-rate helpers ----

Grid<double> tie_split_winrate(const ComparisonSummary& cs, int cells) {
  const int L = cs.wins.rows();
  Grid<double> w(L, L, 0.0);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      if (a != b) w(a, b) = (cs.wins(a, b) + 0.5 * cs.ties(a, b)) / cells;
  return w;
}

std::vector<double> stationary_row_chain(const Grid<double>& P, const std::vector<int>& states,
                                         int max_iter, double tol) {
  const int n = static_cast<int>(states.size());
  std::vector<double> x(n, 1.0 / n), y(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y[j] += x[i] * P(states[i], states[j]);
    double drift = 0.0, total = 0.0;
    for (int j = 0; j < n; ++j) total += y[j];
    for (int j = 0; j < n; ++j) {
      y[j] /= total;
      drift += std::abs(y[j] - x[j]);
    }
    x.swap(y);
    if (drift < tol) break;
  }
  return x;
}

}  // namespace

MethodResult vote(const BallotList& bl, VoteRule rule) {
  if (bl.count() < 1) throw std::invalid_argument("vote: needs at least one ballot");
  switch (rule) {
    case VoteRule::kBorda:
      return borda_rule(bl);
    case VoteRule::kNanson:
      return elimination_rule(bl, true);
    case VoteRule::kBaldwin:
      return elimination_rule(bl, false);
    default:
      break;
  }
  const Grid<long long> pref = preference_matrix(bl);
  switch (rule) {
    case VoteRule::kCopeland:
      return copeland_rule(pref);
    case VoteRule::kSchulze:
      return schulze_rule(pref);
    case VoteRule::kRankedPairs:
      return ranked_pairs_rule(pref);
    case VoteRule::kKemenyYoung:
      return kemeny_rule(pref);
    default:
      throw std::invalid_argument("vote: unknown rule");
  }
}

MethodResult majority_judgment(const ResponseTensor& R) {
  const int L = R.L(), T = R.M() * R.N(), C = R.C();
  std::vector<std::vector<int>> seq(L);
  for (int l = 0; l < L; ++l) {
    std::vector<int> cnt(C + 1, 0);
    for (int m = 0; m < R.M(); ++m)
      for (int n = 0; n < R.N(); ++n) ++cnt[R(l, m, n)];
    seq[l].reserve(T);
    std::vector<int> above(C + 1, 0);  // grades strictly above g, kept incrementally
    for (int g = C - 1; g >= 0; --g) above[g] = above[g + 1] + cnt[g + 1];
    int remaining = T;
    while (remaining > 0) {
      const int want = remaining / 2;  // lower median, descending order
      int g = C;
      while (!(above[g] <= want && want < above[g] + cnt[g])) --g;
      seq[l].push_back(g);
      --cnt[g];
      --remaining;
      for (int h = 0; h < g; ++h) --above[h];
    }
  }
  std::vector<double> scores(L, 0.0);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      if (a != b && seq[a] > seq[b]) scores[a] += 1.0;
  return make_result(scores);
}

MethodResult pagerank(const ResponseTensor& R, double damping, int max_iter, double tol) {
  const ComparisonSummary cs = comparison_summary(R);
  const int L = R.L();
  std::vector<double> colsum(L, 0.0);
  for (int b = 0; b < L; ++b)
    for (int a = 0; a < L; ++a) colsum[b] += static_cast<double>(cs.wins(a, b));

  std::vector<double> x(L, 1.0 / L), y(L);
  for (int iter = 0; iter < max_iter; ++iter) {
    double dangling = 0.0;
    for (int b = 0; b < L; ++b)
      if (colsum[b] <= 0.0) dangling += x[b];
    const double base = damping * dangling / L + (1.0 - damping) / L;
    std::fill(y.begin(), y.end(), base);
    for (int b = 0; b < L; ++b) {
      if (colsum[b] <= 0.0) continue;
      const double scale = damping * x[b] / colsum[b];
      for (int a = 0; a < L; ++a) y[a] += scale * static_cast<double>(cs.wins(a, b));
    }
    double drift = 0.0;
    for (int a = 0; a < L; ++a) drift += std::abs(y[a] - x[a]);
    x.swap(y);
    if (drift < tol) break;
  }
  return make_result(x, optimizer_tie_tolerance(x));
}

MethodResult rank_centrality(const ResponseTensor& R, int max_iter, double tol) {
  const ComparisonSummary cs = comparison_summary(R);
  const int L = R.L();
  int d_max = 1;
  for (int a = 0; a < L; ++a) {
    int d = 0;
    for (int b = 0; b < L; ++b)
      if (b != a && cs.wins(a, b) + cs.wins(b, a) > 0) ++d;
    d_max = std::max(d_max, d);
  }
  Grid<double> P(L, L, 0.0);
  for (int a = 0; a < L; ++a) {
    double off = 0.0;
    for (int b = 0; b < L; ++b) {
      if (b == a) continue;
      const long long dec = cs.wins(a, b) + cs.wins(b, a);
      if (dec > 0) {
        P(a, b) = static_cast<double>(cs.wins(b, a)) / dec / d_max;
        off += P(a, b);
      }
    }
    P(a, a) = 1.0 - off;
  }

  const std::vector<int> comp = comparison_components(cs.wins, nullptr);
  const int n_comp = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<double> scores(L, 0.0);
  for (int c = 0; c < n_comp; ++c) {
    std::vector<int> states;
    for (int i = 0; i < L; ++i)
      if (comp[i] == c) states.push_back(i);
    const std::vector<double> pi = stationary_row_chain(P, states, max_iter, tol);
    const double weight = static_cast<double>(states.size()) / L;
    for (std::size_t i = 0; i < states.size(); ++i) scores[states[i]] = weight * pi[i];
  }
  MethodResult out = make_result(scores, optimizer_tie_tolerance(scores));
  if (n_comp > 1)
    out.notes.push_back("comparison graph has " + std::to_string(n_comp) +
                        " components; stationary masses computed per component and "
                        "weighted by component size");
  return out;
}

MethodResult alpharank(const ResponseTensor& R, double mutation, int max_iter) {
  const ComparisonSummary cs = comparison_summary(R);
  const int L = R.L();
  const Grid<double> w = tie_split_winrate(cs, R.M() * R.N());
  Grid<double> T(L, L, 0.0);
  for (int a = 0; a < L; ++a) {
    double off = 0.0;
    for (int b = 0; b < L; ++b) {
      if (b == a) continue;
      T(a, b) = mutation / (L - 1) + (w(b, a) > 0.5 ? (1.0 - mutation) / (L - 1) : 0.0);
      off += T(a, b);
    }
    T(a, a) = 1.0 - off;
  }
  std::vector<int> states(L);
  std::iota(states.begin(), states.end(), 0);
  const std::vector<double> pi = stationary_row_chain(T, states, max_iter, 1e-12);
  return make_result(pi, optimizer_tie_tolerance(pi));
}

MethodResult nash_rank(const ResponseTensor& R, int iterations) {
  const ComparisonSummary cs = comparison_summary(R);
  const int L = R.L();
  const Grid<double> w = tie_split_winrate(cs, R.M() * R.N());
  Grid<double> A(L, L, 0.0);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      if (a != b) A(a, b) = w(a, b) - 0.5;

  std::vector<double> mass(L, 1.0 / L);
  double total = 1.0;
  std::vector<double> payoff(L);
  std::vector<int> best;
  for (int t = 0; t < iterations; ++t) {
    for (int a = 0; a < L; ++a) {
      double u = 0.0;
      for (int b = 0; b < L; ++b) u += A(a, b) * mass[b];
      payoff[a] = u;  // scale by 1/total is monotone, argmax unaffected
    }
    const double top = *std::max_element(payoff.begin(), payoff.end());
    best.clear();
    for (int a = 0; a < L; ++a)
      if (payoff[a] == top) best.push_back(a);
    const double inc = 1.0 / static_cast<double>(best.size());
    for (int a : best) mass[a] += inc;
    total += 1.0;
  }

  std::vector<double> mix(L), avg_payoff(L, 0.0), scores(L);
  for (int a = 0; a < L; ++a) mix[a] = mass[a] / total;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) avg_payoff[a] += A(a, b) * mix[b];
  for (int a = 0; a < L; ++a) scores[a] = mix[a] + 1e-6 * avg_payoff[a];
  MethodResult out = make_result(scores, optimizer_tie_tolerance(scores));
  out.diagnostics["mass"] = std::move(mix);
  out.diagnostics["payoff"] = std::move(avg_payoff);
  return out;
}

MethodResult serial_rank(const ResponseTensor& R) {
  const ComparisonSummary cs = comparison_summary(R);
  const int L = R.L();
  const int cells = R.M() * R.N();

  std::vector<double> avg_score(L, 0.0);
  for (int l = 0; l < L; ++l) {
    long long s = 0;
    for (int m = 0; m < R.M(); ++m)
      for (int n = 0; n < R.N(); ++n) s += R(l, m, n);
    avg_score[l] = static_cast<double>(s) / cells;
  }

  if (L == 2) {
    const double d = static_cast<double>(cs.wins(0, 1) - cs.wins(1, 0)) / (2.0 * cells);
    return make_result({d, -d}, optimizer_tie_tolerance({d, -d}));
  }

  Eigen::MatrixXd Sc = Eigen::MatrixXd::Zero(L, L);
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      if (a == b) continue;
      const long long diff = cs.wins(a, b) - cs.wins(b, a);
      Sc(a, b) = diff > 0 ? 1.0 : (diff < 0 ? -1.0 : 0.0);
    }
  const Eigen::MatrixXd S =
      0.5 * (static_cast<double>(L) * Eigen::MatrixXd::Ones(L, L) + Sc * Sc.transpose());
  const Eigen::MatrixXd lap = S.rowwise().sum().asDiagonal().toDenseMatrix() - S;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  if (es.info() != Eigen::Success) throw std::runtime_error("serial_rank: eigensolver failed");
  Eigen::VectorXd fiedler = es.eigenvectors().col(1);

  const double mean_avg = std::accumulate(avg_score.begin(), avg_score.end(), 0.0) / L;
  double dot = 0.0;
  for (int l = 0; l < L; ++l) dot += fiedler(l) * (avg_score[l] - mean_avg);
  if (dot < 0.0) {
    fiedler = -fiedler;
  } else if (dot == 0.0) {
    for (int l = 0; l < L; ++l)
      if (fiedler(l) != 0.0) {
        if (fiedler(l) < 0.0) fiedler = -fiedler;
        break;
      }
  }
  std::vector<double> scores(L);
  for (int l = 0; l < L; ++l) scores[l] = fiedler(l);
  return make_result(scores, optimizer_tie_tolerance(scores));
}

MethodResult hodge_rank(const ResponseTensor& R) {
  const ComparisonSummary cs = comparison_summary(R);
  const int L = R.L();
  const double cells = static_cast<double>(R.M()) * R.N();

  const std::vector<int> comp = comparison_components(cs.wins, nullptr);
  const int n_comp = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<double> scores(L, 0.0);

  for (int c = 0; c < n_comp; ++c) {
    std::vector<int> states;
    for (int i = 0; i < L; ++i)
      if (comp[i] == c) states.push_back(i);
    const int n = static_cast<int>(states.size());
    if (n < 2) continue;

    Eigen::MatrixXd lhs = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::VectorXd div = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const int a = states[i], b = states[j];
        const double weight = static_cast<double>(cs.wins(a, b) + cs.wins(b, a));
        if (weight <= 0.0) continue;
        const double flow = static_cast<double>(cs.wins(a, b) - cs.wins(b, a)) / cells;
        lhs(i, i) += weight;
        lhs(i, j) -= weight;
        div(i) += weight * flow;
      }
    const Eigen::VectorXd s = lhs.ldlt().solve(div);
    const double mean = s.mean();
    for (int i = 0; i < n; ++i) scores[states[i]] = s(i) - mean;
  }

  MethodResult out = make_result(scores, optimizer_tie_tolerance(scores));
  if (n_comp > 1)
    out.notes.push_back("comparison graph has " + std::to_string(n_comp) +
                        " components; potentials are mean-zero within each component");
  return out;
}

}  // namespace ranklab
