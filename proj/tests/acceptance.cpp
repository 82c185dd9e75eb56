// Acceptance gate: ten end-to-end checks against recovery bands, oracle
// equivalences, optimization invariants, calibration, runtime ordering and
// CLI determinism. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fail. argv[1] (or the RANKLAB_CLI environment variable)
// must point at the command-line binary for the determinism check.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "ranklab/harness.hpp"
#include "ranklab/latent_methods.hpp"
#include "ranklab/pairwise_methods.hpp"
#include "ranklab/rank_layer.hpp"
#include "ranklab/registry.hpp"
#include "ranklab/social_graph_methods.hpp"

using namespace ranklab;
using ranklab::testing::make_tensor;
using ranklab::testing::random_tensor;
using ranklab::testing::tau_b_oracle;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

struct Agg {
  double sum = 0;
  int n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  double mean() const { return n ? sum / n : std::nan(""); }
};

ResponseTensor three_to_one() {
  return make_tensor(2, 4, 1, 1, {1, 1, 1, 0, 0, 0, 0, 1});
}

std::vector<double> kemeny_oracle(const ResponseTensor& R) {
  const int L = R.L();
  std::vector<int> perm(L), best(L);
  std::iota(perm.begin(), perm.end(), 0);
  best = perm;
  long long best_cost = -1;
  do {
    long long cost = 0;
    for (int m = 0; m < R.M(); ++m)
      for (int n = 0; n < R.N(); ++n)
        for (int i = 0; i < L; ++i)
          for (int j = i + 1; j < L; ++j)
            if (R(perm[j], m, n) > R(perm[i], m, n)) ++cost;
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<double> scores(L);
  for (int i = 0; i < L; ++i) scores[best[i]] = L - (i + 1);
  return scores;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- criteria 1 to 4 share one recovery run ----

void criteria_recovery() {
  const std::vector<std::string> core = {"avg",      "bayes",    "bradley_terry_davidson",
                                         "rasch",    "pagerank", "plackett_luce"};
  std::vector<std::string> methods = core;
  methods.push_back("elo");
  RecoveryConfig cfg;  // defaults: L=11, M=500, N in {1..32}, seeds 1..4
  const ExperimentReport rep = run_recovery(methods, cfg);

  std::map<std::pair<std::string, int>, Agg> tau, top1;
  for (const ReportRow& row : rep.rows) {
    if (row.tau_b) tau[{row.method, row.N}].add(*row.tau_b);
    if (row.top1) top1[{row.method, row.N}].add(*row.top1);
  }

  // 1. band: mean tau_b >= 0.95 at N=1 and >= 0.97 at N=32 for core methods.
  bool ok1 = true;
  double worst1 = 1.0, worst32 = 1.0;
  for (const std::string& m : core) {
    const double t1 = tau[{m, 1}].mean();
    const double t32 = tau[{m, 32}].mean();
    worst1 = std::min(worst1, t1);
    worst32 = std::min(worst32, t32);
    ok1 = ok1 && t1 >= 0.95 && t32 >= 0.97;
  }
  report(1, ok1, "recovery band min mean tau_b " + fmt(worst1) + " at N=1 (>=0.95), " +
                     fmt(worst32) + " at N=32 (>=0.97)");

  // 2. elo pathology: mean tau_b <= 0.90 and below avg at every N.
  bool ok2 = true;
  double elo_max = -1.0;
  for (int N : cfg.trial_counts) {
    const double e = tau[{"elo", N}].mean();
    const double a = tau[{"avg", N}].mean();
    elo_max = std::max(elo_max, e);
    ok2 = ok2 && e <= 0.90 && e < a;
  }
  report(2, ok2, "elo mean tau_b peaks at " + fmt(elo_max) + " (<=0.90, always below avg)");

  // 3. top-1 recovery is exact for core methods at N >= 8.
  bool ok3 = true;
  for (const std::string& m : core)
    for (int N : {8, 16, 32}) ok3 = ok3 && top1[{m, N}].mean() == 1.0;
  report(3, ok3, std::string("top-1 recovery at N>=8 ") + (ok3 ? "1.0 for all core methods"
                                                               : "below 1.0 somewhere"));

  // 4.  tie mirror at N=32: raw scores never tie the planted pair exactly;
  //     min-max normalized avg scores put them within 0.02 on >= 2 seeds.
  bool exact_tie = false;
  int near_ties = 0;
  for (std::uint64_t seed : cfg.seeds) {
    const Generated g = generate(cfg.gen, seed);
    const auto [ta, tb] = *cfg.gen.tie_pair;
    for (const std::string& m : methods) {
      MethodOptions opts;
      opts.seed = seed;
      const MethodResult res = run_method(m, g.tensor, opts);
      if (res.scores[ta] == res.scores[tb]) exact_tie = true;
      if (m == "avg") {
        const auto [lo, hi] = std::minmax_element(res.scores.begin(), res.scores.end());
        const double span = *hi - *lo;
        if (span > 0 && std::abs(res.scores[ta] - res.scores[tb]) / span <= 0.02) ++near_ties;
      }
    }
  }
  const bool ok4 = !exact_tie && near_ties >= 2;
  report(4, ok4, "no exact planted tie at tolerance 0; normalized avg gap <= 0.02 on " +
                     std::to_string(near_ties) + "/4 seeds (need >= 2)");
}

void criterion_stability() {
  const StabilityConfig cfg;  // defaults: N_max=64, budgets {1..32}, 10 seeds
  const ExperimentReport rep = run_stability({"mg_pass_at_k"}, cfg);
  bool n1_ok = true;
  std::map<int, Agg> tau;
  bool defined_all = true;
  for (const ReportRow& row : rep.rows) {
    if (*row.n == 1) {
      n1_ok = n1_ok && row.status == "undefined" && !row.tau_b && row.top1 && *row.top1 == 0.0;
    } else {
      if (row.tau_b)
        tau[*row.n].add(*row.tau_b);
      else
        defined_all = false;
    }
  }
  bool band_ok = true;
  double worst = 1.0;
  for (const auto& [n, agg] : tau) {
    worst = std::min(worst, agg.mean());
    band_ok = band_ok && agg.mean() >= 0.9;
  }
  report(5, n1_ok && defined_all && band_ok,
         "mg_pass_at_k: n=1 undefined with top-1 0.0 on all seeds; min mean tau_b " + fmt(worst) +
             " at n>=2 (>=0.9)");
}

void criterion_oracles() {
  bool ok = true;
  std::string detail;

  // (a) kemeny_young vs exhaustive search, exact scores.
  RandomSource rng(101);
  int kemeny_fail = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const int L = 3 + rng.uniform_int(3);
    const ResponseTensor R = random_tensor(rng, L, 5, 1, 2);
    if (vote(ballots(R), VoteRule::kKemenyYoung).scores != kemeny_oracle(R)) ++kemeny_fail;
  }
  ok = ok && kemeny_fail == 0;

  // (b) tau_b vs direct pair counting on 200 random score pairs.
  double tau_err = 0.0;
  int tau_fail = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int L = 2 + rng.uniform_int(9);
    std::vector<double> a(L), b(L);
    for (double& x : a) x = rng.uniform_int(4);
    for (double& x : b) x = rng.uniform_int(4);
    const double want = tau_b_oracle(a, b);
    const auto got = kendall_tau_b(rank_scores(a, RankScheme::kFractional),
                                   rank_scores(b, RankScheme::kFractional));
    if (std::isnan(want) != !got.has_value())
      ++tau_fail;
    else if (got)
      tau_err = std::max(tau_err, std::abs(*got - want));
  }
  ok = ok && tau_fail == 0 && tau_err <= 1e-12;

  // (c) two-system closed forms.
  const ResponseTensor R2 = three_to_one();
  const MethodResult bt = bradley_terry(R2);
  const double bt_ratio = std::exp(bt.scores[0] - bt.scores[1]);
  const MethodResult pl = listwise_fit(R2, ListwiseModel::kPlackettLuce);
  const double pl_ratio = std::exp(pl.scores[0] - pl.scores[1]);
  const MethodResult hodge = hodge_rank(R2);
  const MethodResult rc = rank_centrality(R2);
  const double rc_ratio = rc.scores[0] / rc.scores[1];
  ok = ok && std::abs(bt_ratio - 3.0) <= 1e-8 && std::abs(pl_ratio - 3.0) <= 1e-8;
  ok = ok && std::abs(hodge.scores[0] - 0.25) <= 1e-12 && std::abs(hodge.scores[1] + 0.25) <= 1e-12;
  ok = ok && std::abs(rc_ratio - 3.0) <= 1e-10;

  detail = "kemeny exact on 50/50; tau_b max err " + fmt(tau_err) + "; BT ratio " +
           fmt(bt_ratio) + ", PL ratio " + fmt(pl_ratio) + ", hodge +/-" +
           fmt(hodge.scores[0]) + ", rank_centrality odds " + fmt(rc_ratio);
  report(6, ok, detail);
}

void criterion_optimization() {
  bool ok = true;

  // JML analytic gradient vs central differences on random 4x6 instances.
  RandomSource rng(103);
  double grad_err = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const int L = 4, M = 6, N = 3;
    Grid<int> s(L, M, 0);
    for (int l = 0; l < L; ++l)
      for (int m = 0; m < M; ++m) s(l, m) = rng.uniform_int(N + 1);
    std::vector<double> theta(L), b(M);
    for (double& v : theta) v = 0.8 * rng.normal();
    for (double& v : b) v = 0.8 * rng.normal();
    std::vector<double> g_theta, g_b;
    rasch_joint_gradient(s, N, theta, b, g_theta, g_b);
    const double h = 1e-6;
    auto fd = [&](std::vector<double>& vec, int i) {
      vec[i] += h;
      const double fp = rasch_joint_log_likelihood(s, N, theta, b);
      vec[i] -= 2 * h;
      const double fm = rasch_joint_log_likelihood(s, N, theta, b);
      vec[i] += h;
      return (fp - fm) / (2 * h);
    };
    for (int l = 0; l < L; ++l) grad_err = std::max(grad_err, std::abs(g_theta[l] - fd(theta, l)));
    for (int m = 0; m < M; ++m) grad_err = std::max(grad_err, std::abs(g_b[m] - fd(b, m)));
  }
  ok = ok && grad_err <= 1e-6;

  // Monotone likelihood traces for the MM fitters.
  double worst_drift = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const ResponseTensor R = random_tensor(rng, 5, 12, 2, 1);
    const BtMmFit bt = bradley_terry_mm(comparison_summary(R).wins);
    for (size_t i = 1; i < bt.ll_trace.size(); ++i)
      worst_drift = std::min(worst_drift, bt.ll_trace[i] - bt.ll_trace[i - 1]);
    const ResponseTensor G = random_tensor(rng, 5, 12, 2, 2);
    const MethodResult pl = listwise_fit(G, ListwiseModel::kPlackettLuce);
    const std::vector<double>& ll = pl.diagnostics.at("log_likelihood_trace");
    for (size_t i = 1; i < ll.size(); ++i) worst_drift = std::min(worst_drift, ll[i] - ll[i - 1]);
  }
  ok = ok && worst_drift >= -1e-12;

  // Stationary / equilibrium masses sum to one.
  double mass_err = 0.0;
  for (int rep = 0; rep < 3; ++rep) {
    const ResponseTensor R = random_tensor(rng, 6, 10, 2, 1);
    for (const std::vector<double>& s :
         {pagerank(R).scores, rank_centrality(R).scores, alpharank(R).scores,
          nash_rank(R, 20000).diagnostics.at("mass")}) {
      const double total = std::accumulate(s.begin(), s.end(), 0.0);
      mass_err = std::max(mass_err, std::abs(total - 1.0));
    }
  }
  ok = ok && mass_err <= 1e-10;

  report(7, ok, "JML gradient err " + fmt(grad_err) + " (<=1e-6); MM drift " + fmt(worst_drift) +
                    " (>=-1e-12); mass err " + fmt(mass_err) + " (<=1e-10)");
}

void criterion_mcmc() {
  // 1-D quadrature oracle for the two-system 3:1 posterior-mean gap.
  auto log_post = [](double d) {
    return 3.0 * -log1pexp(-d) + 1.0 * -log1pexp(d) - d * d / 2.0;
  };
  double num = 0, den = 0;
  for (double d = -12.0; d <= 12.0; d += 1e-3) {
    const double w = std::exp(log_post(d));
    num += d * w;
    den += w;
  }
  const double oracle = num / den;
  const MethodResult r = bayesian_mcmc(three_to_one(), default_prior(), {});
  const double gap = r.scores[0] - r.scores[1];
  const bool ok = std::abs(gap - oracle) <= 0.15;
  report(8, ok, "posterior gap " + fmt(gap) + " vs quadrature " + fmt(oracle) +
                    " (|diff| <= 0.15)");
}

void criterion_runtime() {
  RuntimeConfig small;
  small.systems = {8};
  small.tasks = {500};
  small.trials = {1};
  small.replicates = 5;
  const ExperimentReport rep = run_runtime(default_runtime_methods(), small);

  std::map<std::string, std::vector<double>> secs;
  for (const ReportRow& row : rep.rows)
    if (row.seconds) secs[row.method].push_back(*row.seconds);
  auto median = [&](const std::string& m) {
    std::vector<double> v = secs[m];
    std::sort(v.begin(), v.end());
    return v.empty() ? std::nan("") : v[v.size() / 2];
  };
  const double t_borda = median("borda"), t_bayes = median("bayes"), t_avg = median("avg"),
               t_pr = median("pagerank"), t_bt = median("bradley_terry"),
               t_kem = median("kemeny_young");
  bool ok = t_borda < t_bt && t_bayes < t_bt && t_avg < t_bt && t_pr < t_bt && t_bt < t_kem &&
            t_kem >= 100.0 * t_borda;

  RuntimeConfig big;
  big.systems = {16};
  big.tasks = {1000};
  big.trials = {1};
  big.replicates = 2;
  const ExperimentReport rep2 = run_runtime(default_runtime_methods(), big);
  std::map<std::string, std::vector<double>> secs2;
  bool kemeny_skipped = false;
  for (const ReportRow& row : rep2.rows) {
    if (row.method == "kemeny_young" && row.status == "skipped") kemeny_skipped = true;
    if (row.seconds) secs2[row.method].push_back(*row.seconds);
  }
  double slowest_other = 0.0, t_mml = 0.0;
  for (const auto& [m, v] : secs2) {
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const double med = sorted[sorted.size() / 2];
    if (m == "rasch_mml")
      t_mml = med;
    else
      slowest_other = std::max(slowest_other, med);
  }
  ok = ok && kemeny_skipped && t_mml > slowest_other;

  report(9, ok, "at (8,500,1): score methods " + fmt(std::max({t_borda, t_bayes, t_avg, t_pr})) +
                    "s < bradley_terry " + fmt(t_bt) + "s < kemeny " + fmt(t_kem) +
                    "s, kemeny/borda " + fmt(t_kem / t_borda) +
                    "x (>=100); rasch_mml slowest at (16,1000,1): " + fmt(t_mml) + "s vs " +
                    fmt(slowest_other) + "s");
}

void criterion_cli_determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  if (cli.empty()) {
    report(10, false, "no CLI binary given (argv[1] or RANKLAB_CLI)");
    return;
  }
  const fs::path dir = fs::temp_directory_path();
  const std::string base1 = (dir / "ranklab_acc_run1").string();
  const std::string base2 = (dir / "ranklab_acc_run2").string();
  const std::string args =
      " recover --L 6 --M 60 --N-max 4 --trials 1,2,4 --seeds 2 --tie-pair none"
      " --methods avg,thompson,bayesian_mcmc,plackett_luce --formats csv,json --out ";
  const int rc1 = std::system((cli + args + base1 + " > /dev/null 2>&1").c_str());
  const int rc2 = std::system((cli + args + base2 + " > /dev/null 2>&1").c_str());
  bool ok = rc1 == 0 && rc2 == 0;
  std::string detail;
  if (!ok) {
    detail = "CLI exited with " + std::to_string(rc1) + "/" + std::to_string(rc2);
  } else {
    const std::string csv1 = read_file(base1 + ".csv"), csv2 = read_file(base2 + ".csv");
    const std::string js1 = read_file(base1 + ".json"), js2 = read_file(base2 + ".json");
    ok = !csv1.empty() && csv1 == csv2 && !js1.empty() && js1 == js2;
    detail = "two seeded runs with thompson/mcmc/plackett_luce: csv " +
             std::to_string(csv1.size()) + " bytes, json " + std::to_string(js1.size()) +
             (ok ? " bytes, byte-identical" : " bytes, MISMATCH");
  }
  for (const std::string& b : {base1, base2})
    for (const char* ext : {".csv", ".json"}) {
      std::error_code ec;
      fs::remove(b + ext, ec);
    }
  report(10, ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  if (argc > 1) cli = argv[1];
  if (cli.empty())
    if (const char* env = std::getenv("RANKLAB_CLI")) cli = env;

  criteria_recovery();
  criterion_stability();
  criterion_oracles();
  criterion_optimization();
  criterion_mcmc();
  criterion_runtime();
  criterion_cli_determinism(cli);

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
