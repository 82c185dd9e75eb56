#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "ranklab/pairwise_methods.hpp"

using namespace ranklab;
using testing::make_tensor;
using testing::random_tensor;

namespace {

// 3:1 decisive win split between two systems across four tasks.
ResponseTensor three_to_one() {
  return make_tensor(2, 4, 1, 1, {1, 1, 1, 0, 0, 0, 0, 1});
}

}  // namespace

TEST_SUITE("pairwise") {

TEST_CASE("match_stream order and outcomes") {
  const ResponseTensor R = make_tensor(3, 2, 1, 2, {2, 1, 1, 1, 0, 2});
  const std::vector<Match> ms = match_stream(R);
  REQUIRE(ms.size() == 2 * 3);
  // Task 0 levels {2,1,0}: (0,1) a wins, (0,2) a wins, (1,2) a wins.
  CHECK(ms[0].a == 0);
  CHECK(ms[0].b == 1);
  CHECK(ms[0].outcome == Match::kAWins);
  CHECK(ms[1].outcome == Match::kAWins);
  CHECK(ms[2].outcome == Match::kAWins);
  // Task 1 levels {1,1,2}: (0,1) draw, (0,2) b wins, (1,2) b wins.
  CHECK(ms[3].outcome == Match::kDraw);
  CHECK(ms[4].outcome == Match::kBWins);
  CHECK(ms[5].outcome == Match::kBWins);
}

TEST_CASE("match_stream length over random tensors") {
  RandomSource rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    const ResponseTensor R = random_tensor(rng, 4, 3, 2, 2);
    CHECK(match_stream(R).size() == static_cast<size_t>(3 * 2 * 4 * 3 / 2));
  }
}

TEST_CASE("comparison_components splits isolated groups") {
  // Systems {0,1} interact, {2,3} interact, no cross edges.
  Grid<long long> wins(4, 4, 0);
  wins(0, 1) = 2;
  wins(1, 0) = 1;
  wins(2, 3) = 1;
  Grid<long long> ties(4, 4, 0);
  ties(3, 2) = 1;
  const std::vector<int> comp = comparison_components(wins, &ties);
  CHECK(comp[0] == comp[1]);
  CHECK(comp[2] == comp[3]);
  CHECK(comp[0] != comp[2]);
}

TEST_CASE("elo rates the dominant system higher and is deterministic") {
  const ResponseTensor R = three_to_one();
  const MethodResult r1 = elo(R);
  const MethodResult r2 = elo(R);
  CHECK(r1.scores == r2.scores);
  CHECK(r1.scores[0] > r1.scores[1]);
  CHECK(r1.ranks.competition == std::vector<double>{1, 2});
  // Zero-sum update around the initial rating.
  CHECK(r1.scores[0] + r1.scores[1] == doctest::Approx(2 * 1500.0).epsilon(1e-9));
}

TEST_CASE("glicko_period inflates idle uncertainty with a cap") {
  GlickoParams p;
  std::vector<double> rating{1500.0, 1500.0};
  std::vector<double> rd{50.0, 349.9};
  glicko_period(rating, rd, {}, p);
  // Idle players keep their rating; RD grows by c in quadrature.
  CHECK(rating[0] == 1500.0);
  CHECK(rd[0] == doctest::Approx(std::sqrt(50.0 * 50.0 + p.c * p.c)).epsilon(1e-12));
  CHECK(rd[1] == doctest::Approx(p.initial_rd).epsilon(1e-12));  // capped
  // A decisive match shrinks RD below the inflated value.
  std::vector<double> rating2{1500.0, 1500.0};
  std::vector<double> rd2{200.0, 200.0};
  glicko_period(rating2, rd2, {Match{0, 1, Match::kAWins}}, p);
  CHECK(rating2[0] > 1500.0);
  CHECK(rating2[1] < 1500.0);
  CHECK(rd2[0] < std::sqrt(200.0 * 200.0 + p.c * p.c));
  CHECK(rd2[0] >= p.rd_floor);
}

TEST_CASE("glicko ranks the dominant system first") {
  const MethodResult r = glicko(three_to_one());
  CHECK(r.scores[0] > r.scores[1]);
}

TEST_CASE("trueskill conservative score orders a one-sided match-up") {
  const ResponseTensor R = make_tensor(2, 6, 1, 1, {1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0});
  const MethodResult r = trueskill(R);
  CHECK(r.scores[0] > r.scores[1]);
  // Winning must not lower the conservative score below the prior's.
  const TrueSkillParams p;
  CHECK(r.scores[0] > p.mu0 - 3 * p.sigma0);
}

TEST_CASE("bradley_terry two-system strengths match the closed form") {
  // Oracle: with wins 3:1 the MLE satisfies pi_0/pi_1 = 3.
  const MethodResult r = bradley_terry(three_to_one());
  CHECK(std::exp(r.scores[0] - r.scores[1]) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(r.scores[0] + r.scores[1] == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("bradley_terry_mm log-likelihood never decreases") {
  RandomSource rng(11);
  for (int rep = 0; rep < 6; ++rep) {
    const ResponseTensor R = random_tensor(rng, 5, 8, 2, 1);
    const ComparisonSummary cs = comparison_summary(R);
    const BtMmFit fit = bradley_terry_mm(cs.wins);
    REQUIRE(fit.ll_trace.size() >= 1);
    for (size_t i = 1; i < fit.ll_trace.size(); ++i)
      CHECK(fit.ll_trace[i] >= fit.ll_trace[i - 1] - 1e-12);
    double prod = 1;
    for (double p : fit.pi) prod *= p;
    CHECK(std::pow(prod, 1.0 / fit.pi.size()) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("bradley_terry exposes a monotone likelihood trace") {
  const MethodResult r = bradley_terry(three_to_one());
  REQUIRE(r.diagnostics.count("log_likelihood_trace"));
  const std::vector<double>& ll = r.diagnostics.at("log_likelihood_trace");
  for (size_t i = 1; i < ll.size(); ++i) CHECK(ll[i] >= ll[i - 1] - 1e-12);
}

TEST_CASE("davidson and rao_kupper report a tie parameter") {
  // Graded data with draws on some cells.
  const ResponseTensor R = make_tensor(2, 5, 1, 2, {2, 2, 1, 0, 1, 1, 2, 1, 1, 0});
  for (BtVariant v : {BtVariant::kDavidson, BtVariant::kRaoKupper}) {
    BtOptions opt;
    opt.variant = v;
    const MethodResult r = bradley_terry(R, opt);
    REQUIRE(r.diagnostics.count("tie_param"));
    CHECK(r.diagnostics.at("tie_param")[0] > 0.0);
    CHECK(std::isfinite(r.scores[0]));
  }
}

TEST_CASE("rao_kupper tie parameter stays above one") {
  const ResponseTensor R = make_tensor(2, 5, 1, 2, {2, 2, 1, 0, 1, 1, 2, 1, 1, 0});
  BtOptions opt;
  opt.variant = BtVariant::kRaoKupper;
  CHECK(bradley_terry(R, opt).diagnostics.at("tie_param")[0] > 1.0);
}

TEST_CASE("disconnected comparison graph is rejected, ties reconnect it") {
  // Identical outcomes everywhere: all matches are draws. Plain BT drops
  // draws and sees an edgeless graph; the tie-aware variants keep it
  // connected.
  const ResponseTensor R = make_tensor(2, 3, 1, 1, {1, 1, 1, 1, 1, 1});
  try {
    bradley_terry(R);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("disconnected") != std::string::npos);
    CHECK(msg.find("{1}") != std::string::npos);
    CHECK(msg.find("{2}") != std::string::npos);
  }
  BtOptions opt;
  opt.variant = BtVariant::kDavidson;
  const MethodResult r = bradley_terry(R, opt);
  CHECK(r.ranks.competition == std::vector<double>{1, 1});
}

TEST_CASE("one-sided sweep stays finite and a prior tames the gap") {
  // System 0 wins every comparison; the unpenalized MLE pushes the loser to
  // the strength floor but the scores stay finite and ordered.
  const ResponseTensor R = make_tensor(2, 3, 1, 1, {1, 1, 1, 0, 0, 0});
  const MethodResult raw = bradley_terry(R);
  CHECK(std::isfinite(raw.scores[0]));
  CHECK(raw.scores[0] > raw.scores[1]);
  BtOptions opt;
  opt.prior = Prior::gaussian(0.0, 1.0);
  const MethodResult map = bradley_terry(R, opt);
  CHECK(map.scores[0] > map.scores[1]);
  CHECK(map.scores[0] - map.scores[1] < raw.scores[0] - raw.scores[1]);
}

TEST_CASE("map prior shrinks strengths toward zero") {
  BtOptions tight;
  tight.prior = Prior::gaussian(0.0, 0.1);
  BtOptions loose;
  loose.prior = Prior::gaussian(0.0, 10.0);
  const ResponseTensor R = three_to_one();
  const MethodResult rt = bradley_terry(R, tight);
  const MethodResult rl = bradley_terry(R, loose);
  const double gap_tight = rt.scores[0] - rt.scores[1];
  const double gap_loose = rl.scores[0] - rl.scores[1];
  CHECK(gap_tight > 0);
  CHECK(gap_tight < gap_loose);
}

TEST_CASE("thompson is deterministic for a fixed seed and sane") {
  const ResponseTensor R = three_to_one();
  const MethodResult a = thompson(R, 500, 42);
  const MethodResult b = thompson(R, 500, 42);
  CHECK(a.scores == b.scores);
  CHECK(a.scores[0] > a.scores[1]);
  const MethodResult c = thompson(R, 500, 43);
  CHECK(a.scores != c.scores);
}

TEST_CASE("bayesian_mcmc reports acceptance and is reproducible") {
  McmcOptions opt;
  opt.iterations = 4000;
  opt.burn_in = 1000;
  const ResponseTensor R = three_to_one();
  const MethodResult a = bayesian_mcmc(R, default_prior(), opt);
  const MethodResult b = bayesian_mcmc(R, default_prior(), opt);
  CHECK(a.scores == b.scores);
  REQUIRE(a.diagnostics.count("acceptance_rate"));
  const double acc = a.diagnostics.at("acceptance_rate")[0];
  CHECK(acc > 0.05);
  CHECK(acc < 0.95);
  CHECK(a.scores[0] > a.scores[1]);
  CHECK(a.scores[0] + a.scores[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("bayesian_mcmc posterior gap tracks the quadrature oracle") {
  // Oracle: 1-D trapezoid integration of the two-system posterior with the
  // second log-strength pinned at -x (sum-zero), i.e. gap parameterized by
  // d = x_0 - x_1 with log-posterior 3 log s(d) + log s(-d) + log N(d | 0, 2).
  auto logistic_ll = [](double d) {
    return 3.0 * -ranklab::log1pexp(-d) + 1.0 * -ranklab::log1pexp(d) - d * d / 2.0;
  };
  double num = 0, den = 0;
  const double h = 1e-3;
  for (double d = -12.0; d <= 12.0; d += h) {
    const double wgt = std::exp(logistic_ll(d));
    num += d * wgt;
    den += wgt;
  }
  const double oracle_gap = num / den;
  McmcOptions opt;
  opt.iterations = 20000;
  opt.burn_in = 5000;
  const MethodResult r = bayesian_mcmc(three_to_one(), default_prior(), opt);
  CHECK(std::abs((r.scores[0] - r.scores[1]) - oracle_gap) < 0.15);
}

}  // TEST_SUITE
