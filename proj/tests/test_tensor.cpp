#include <doctest.h>

#include <stdexcept>

#include "helpers.hpp"
#include "ranklab/tensor.hpp"

using namespace ranklab;
using testing::make_tensor;
using testing::random_tensor;

TEST_SUITE("tensor") {

TEST_CASE("validation accepts in-range and rejects out-of-range entries") {
  CHECK_NOTHROW(make_tensor(1, 1, 1, 1, {1}).validate());
  CHECK_THROWS_AS(make_tensor(1, 1, 1, 1, {2}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_tensor(1, 1, 1, 1, {-1}).validate(), std::invalid_argument);
}

TEST_CASE("promote single_trial maps (L,M) to (L,M,1)") {
  OutcomeMatrix E(2, 3, 0);
  const ResponseTensor R = promote(E, 1, PromotionMode::kSingleTrial);
  CHECK(R.L() == 2);
  CHECK(R.M() == 3);
  CHECK(R.N() == 1);
  for (int l = 0; l < 2; ++l)
    for (int m = 0; m < 3; ++m) CHECK(R(l, m, 0) == 0);
}

TEST_CASE("promote single_system maps the 2x5 graded matrix to (1,2,5)") {
  OutcomeMatrix E(2, 5);
  const int rows[2][5] = {{0, 1, 2, 2, 1}, {1, 1, 0, 2, 2}};
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 5; ++n) E(m, n) = rows[m][n];
  const ResponseTensor R = promote(E, 2, PromotionMode::kSingleSystem);
  CHECK(R.L() == 1);
  CHECK(R.M() == 2);
  CHECK(R.N() == 5);
  CHECK(R(0, 0, 2) == 2);
  CHECK(R(0, 1, 0) == 1);
}

TEST_CASE("trial_means on the graded matrix with half-credit rubric") {
  // Oracle by hand: task 1 = (0+0.5+1+1+0.5)/5 = 0.6, task 2 = (0.5+0.5+0+1+1)/5 = 0.6.
  OutcomeMatrix E(2, 5);
  const int rows[2][5] = {{0, 1, 2, 2, 1}, {1, 1, 0, 2, 2}};
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 5; ++n) E(m, n) = rows[m][n];
  const ResponseTensor R = promote(E, 2, PromotionMode::kSingleSystem);
  const Rubric w{{0.0, 0.5, 1.0}};
  const Grid<double> tm = trial_means(R, w);
  CHECK(tm.rows() == 1);
  CHECK(tm.cols() == 2);
  CHECK(tm(0, 0) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(tm(0, 1) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("trial_means identity rubric equals arithmetic mean of raw outcomes") {
  RandomSource rng(11);
  const ResponseTensor R = random_tensor(rng, 3, 4, 5, 3);
  const Grid<double> tm = trial_means(R, identity_rubric(3));
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 4; ++m) {
      double s = 0;
      for (int n = 0; n < 5; ++n) s += R(l, m, n);
      CHECK(tm(l, m) == doctest::Approx(s / 5).epsilon(1e-12));
    }
}

TEST_CASE("trial_means zero rubric annihilates") {
  RandomSource rng(7);
  const ResponseTensor R = random_tensor(rng, 2, 3, 2, 2);
  const Grid<double> tm = trial_means(R, Rubric{{0.0, 0.0, 0.0}});
  for (double v : tm.flat()) CHECK(v == 0.0);
}

TEST_CASE("rubric check throws on length mismatch, warns on non-monotone") {
  const Rubric too_short{{0.0, 1.0}};
  CHECK_THROWS_AS(too_short.check(2), std::invalid_argument);
  const Rubric non_monotone{{0.0, 2.0, 1.0}};
  CHECK_NOTHROW(non_monotone.check(2));  // warning only
  CHECK(identity_rubric(2).weights == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(normalized_rubric(2).weights == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("comparison_summary counts wins and ties exactly") {
  // L=2, M=1, N=2: system 0 outcomes (1,1), system 1 outcomes (0,1).
  const ResponseTensor R = make_tensor(2, 1, 2, 1, {1, 1, 0, 1});
  const ComparisonSummary cs = comparison_summary(R);
  CHECK(cs.wins(0, 1) == 1);
  CHECK(cs.wins(1, 0) == 0);
  CHECK(cs.ties(0, 1) == 1);
  CHECK(cs.ties(1, 0) == 1);
  CHECK(cs.wins(0, 0) == 0);
  CHECK(cs.ties(0, 0) == 0);
}

TEST_CASE("comparison_summary identical systems are all ties") {
  const ResponseTensor R = make_tensor(2, 2, 2, 1, {1, 0, 0, 1, 1, 0, 0, 1});
  const ComparisonSummary cs = comparison_summary(R);
  CHECK(cs.wins(0, 1) == 0);
  CHECK(cs.wins(1, 0) == 0);
  CHECK(cs.ties(0, 1) == 4);
}

TEST_CASE("comparison_summary conservation over random tensors") {
  RandomSource rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const ResponseTensor R = random_tensor(rng, 4, 3, 2, 2);
    const ComparisonSummary cs = comparison_summary(R);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        if (a == b) continue;
        CHECK(cs.wins(a, b) + cs.wins(b, a) + cs.ties(a, b) == 6);
        CHECK(cs.ties(a, b) == cs.ties(b, a));
      }
  }
}

TEST_CASE("ballots group by outcome, best first, task-major trial-minor") {
  // Systems (0,1,2) with outcomes (2,0,2) on the only cell.
  const ResponseTensor R = make_tensor(3, 1, 1, 2, {2, 0, 2});
  const BallotList bl = ballots(R);
  REQUIRE(bl.count() == 1);
  CHECK(bl.group_sizes == std::vector<int>{2, 1});
  CHECK(bl.items == std::vector<int>{0, 2, 1});

  const ResponseTensor R2 = make_tensor(2, 2, 2, 1, {1, 0, 0, 1, 0, 1, 1, 0});
  const BallotList bl2 = ballots(R2);
  CHECK(bl2.count() == 4);  // cells (1,1),(1,2),(2,1),(2,2)
  // cell (m=0,n=0): outcomes (1,0) -> groups {0},{1}
  CHECK(bl2.group_sizes[0] == 1);
  CHECK(bl2.items[0] == 0);
  CHECK(bl2.items[1] == 1);
}

TEST_CASE("all-equal cell gives a single full group") {
  const ResponseTensor R = make_tensor(3, 1, 1, 1, {1, 1, 1});
  const BallotList bl = ballots(R);
  REQUIRE(bl.count() == 1);
  CHECK(bl.group_sizes == std::vector<int>{3});
}

TEST_CASE("comparison_graph normalizes wins by cell count") {
  const ResponseTensor R = make_tensor(2, 1, 2, 1, {1, 1, 0, 1});
  const Grid<double> g = comparison_graph(R);
  CHECK(g(0, 1) == doctest::Approx(0.5));
  CHECK(g(1, 0) == 0.0);
  CHECK(g(0, 0) == 0.0);
}

TEST_CASE("preference_matrix counts strict-above pairs per ballot") {
  const ResponseTensor R = make_tensor(3, 2, 1, 2, {2, 1, 1, 0, 2, 0});
  // cell m=0: outcomes (2,1,2) -> {0,2} above {1}; cell m=1: (1,0,0) -> {0} above {1,2}
  const BallotList bl = ballots(R);
  const Grid<long long> p = preference_matrix(bl);
  CHECK(p(0, 1) == 2);
  CHECK(p(2, 1) == 1);
  CHECK(p(0, 2) == 1);
  CHECK(p(2, 0) == 0);
  CHECK(p(1, 2) == 0);
}

TEST_CASE("top_category_counts binarizes against C") {
  const ResponseTensor R = make_tensor(1, 2, 3, 2, {2, 1, 2, 0, 2, 2});
  const Grid<int> s = top_category_counts(R);
  CHECK(s(0, 0) == 2);
  CHECK(s(0, 1) == 2);
}

TEST_CASE("truncate_trials keeps a prefix") {
  const ResponseTensor R = make_tensor(1, 2, 3, 1, {1, 0, 1, 0, 1, 1});
  const ResponseTensor T = R.truncate_trials(2);
  CHECK(T.N() == 2);
  CHECK(T(0, 0, 0) == 1);
  CHECK(T(0, 0, 1) == 0);
  CHECK(T(0, 1, 0) == 0);
  CHECK(T(0, 1, 1) == 1);
}

TEST_CASE("derived views are permutation equivariant") {
  RandomSource rng(13);
  const ResponseTensor R = random_tensor(rng, 4, 3, 2, 2);
  const std::vector<int> sigma{2, 0, 3, 1};
  const ResponseTensor Rp = testing::relabel(R, sigma);
  const ComparisonSummary cs = comparison_summary(R);
  const ComparisonSummary csp = comparison_summary(Rp);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(cs.wins(a, b) == csp.wins(sigma[a], sigma[b]));
      CHECK(cs.ties(a, b) == csp.ties(sigma[a], sigma[b]));
    }
  const Grid<long long> p = preference_matrix(ballots(R));
  const Grid<long long> pp = preference_matrix(ballots(Rp));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(p(a, b) == pp(sigma[a], sigma[b]));
}

}  // TEST_SUITE
