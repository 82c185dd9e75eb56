#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "ranklab/latent_methods.hpp"
#include "ranklab/pairwise_methods.hpp"

using namespace ranklab;
using testing::make_tensor;
using testing::random_tensor;

namespace {

// Central finite difference of the joint Rasch log-likelihood, the oracle the
// analytic gradient is checked against.
double fd_partial(const Grid<int>& s, int trials, std::vector<double> theta,
                  std::vector<double> b, bool wrt_theta, int idx) {
  const double h = 1e-6;
  double& x = wrt_theta ? theta[idx] : b[idx];
  x += h;
  const double fp = rasch_joint_log_likelihood(s, trials, theta, b);
  x -= 2 * h;
  const double fm = rasch_joint_log_likelihood(s, trials, theta, b);
  return (fp - fm) / (2 * h);
}

}  // namespace

TEST_SUITE("latent") {

TEST_CASE("rasch joint gradient matches finite differences") {
  RandomSource rng(7);
  const int L = 4, M = 6, N = 3;
  Grid<int> s(L, M, 0);
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < M; ++m) s(l, m) = rng.uniform_int(N + 1);
  std::vector<double> theta(L), b(M);
  for (double& v : theta) v = rng.normal() * 0.8;
  for (double& v : b) v = rng.normal() * 0.8;

  std::vector<double> g_theta, g_b;
  rasch_joint_gradient(s, N, theta, b, g_theta, g_b);
  REQUIRE(g_theta.size() == static_cast<size_t>(L));
  REQUIRE(g_b.size() == static_cast<size_t>(M));
  for (int l = 0; l < L; ++l)
    CHECK(std::abs(g_theta[l] - fd_partial(s, N, theta, b, true, l)) <= 1e-6);
  for (int m = 0; m < M; ++m)
    CHECK(std::abs(g_b[m] - fd_partial(s, N, theta, b, false, m)) <= 1e-6);
}

TEST_CASE("gauss_hermite_normal reproduces standard normal moments") {
  const GaussHermite gh = gauss_hermite_normal(21);
  REQUIRE(gh.nodes.size() == 21);
  double m0 = 0, m1 = 0, m2 = 0, m4 = 0;
  for (size_t q = 0; q < gh.nodes.size(); ++q) {
    const double z = gh.nodes[q], w = gh.weights[q];
    m0 += w;
    m1 += w * z;
    m2 += w * z * z;
    m4 += w * z * z * z * z;
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(m1) < 1e-12);
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(m4 == doctest::Approx(3.0).epsilon(1e-8));
  CHECK_THROWS_AS(gauss_hermite_normal(0), std::invalid_argument);
}

TEST_CASE("irt_fit rejects graded tensors and degenerate shapes") {
  const ResponseTensor graded = make_tensor(2, 2, 1, 2, {2, 1, 0, 1});
  CHECK_THROWS_AS(irt_fit(graded, IrtModel::kRaschJml), std::invalid_argument);
  const ResponseTensor thin = make_tensor(1, 3, 1, 1, {1, 0, 1});
  CHECK_THROWS_AS(irt_fit(thin, IrtModel::kRaschMml), std::invalid_argument);
}

TEST_CASE("rasch ability follows the solve-count order") {
  // Three systems with strictly decreasing solve counts on shared tasks.
  const ResponseTensor R = make_tensor(3, 4, 2, 1,
                                       {1, 1, 1, 1, 1, 1, 1, 0,    // 7 of 8
                                        1, 1, 1, 0, 1, 0, 0, 0,    // 4 of 8
                                        1, 0, 0, 0, 0, 0, 0, 1});  // 2 of 8
  for (IrtModel model : {IrtModel::kRaschJml, IrtModel::kRaschMml}) {
    const MethodResult r = irt_fit(R, model);
    CHECK(r.scores[0] > r.scores[1]);
    CHECK(r.scores[1] > r.scores[2]);
    REQUIRE(r.diagnostics.count("difficulty"));
    CHECK(r.diagnostics.at("difficulty").size() == 4);
  }
}

TEST_CASE("marginal rasch ability is monotone in the raw score") {
  // For the Rasch model on shared items the total solve count is sufficient
  // for ability, so EAP estimates must sort exactly like solve counts.
  RandomSource rng(13);
  for (int rep = 0; rep < 3; ++rep) {
    const ResponseTensor R = random_tensor(rng, 5, 6, 2, 1);
    const MethodResult r = irt_fit(R, IrtModel::kRaschMml);
    std::vector<int> count(5, 0);
    for (int l = 0; l < 5; ++l)
      for (int m = 0; m < 6; ++m)
        for (int n = 0; n < 2; ++n) count[l] += R(l, m, n);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        if (count[a] > count[b]) CHECK(r.scores[a] > r.scores[b]);
        if (count[a] == count[b]) CHECK(std::abs(r.scores[a] - r.scores[b]) < 1e-9);
      }
  }
}

TEST_CASE("perfect score patterns are clamped with a note") {
  const ResponseTensor R = make_tensor(2, 3, 1, 1, {1, 1, 1, 1, 0, 0});
  const MethodResult r = irt_fit(R, IrtModel::kRaschJml);
  bool noted = false;
  for (const std::string& n : r.notes) noted |= n.find("clamped") != std::string::npos;
  CHECK(noted);
  CHECK(r.scores[0] > r.scores[1]);
}

TEST_CASE("2pl and 3pl keep item parameters inside their boxes") {
  RandomSource rng(29);
  const ResponseTensor R = random_tensor(rng, 6, 8, 2, 1);
  const MethodResult two = irt_fit(R, IrtModel::kRasch2pl);
  REQUIRE(two.diagnostics.count("discrimination"));
  for (double a : two.diagnostics.at("discrimination")) {
    CHECK(a >= 0.05 - 1e-9);
    CHECK(a <= 20.0 + 1e-9);
  }
  const MethodResult three = irt_fit(R, IrtModel::kRasch3pl);
  REQUIRE(three.diagnostics.count("guessing"));
  for (double c : three.diagnostics.at("guessing")) {
    CHECK(c >= 0.0);
    CHECK(c <= 0.35 + 1e-9);
  }
}

TEST_CASE("dynamic model tracks improvement across trials") {
  // Systems solve nothing on trial one and everything on trial four.
  const int L = 2, M = 3, N = 4;
  std::vector<int> flat(L * M * N, 0);
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < M; ++m)
      for (int n = 0; n < N; ++n)
        flat[(l * M + m) * N + n] = (n >= 2 || (l == 0 && n >= 1)) ? 1 : 0;
  const ResponseTensor R = make_tensor(L, M, N, 1, std::move(flat));
  const MethodResult r = irt_fit(R, IrtModel::kDynamic);
  REQUIRE(r.diagnostics.count("theta_first_trial"));
  const std::vector<double>& first = r.diagnostics.at("theta_first_trial");
  REQUIRE(first.size() == static_cast<size_t>(L));
  for (int l = 0; l < L; ++l) CHECK(r.scores[l] > first[l]);
  // System 0 starts improving earlier and ends at least as high.
  CHECK(r.scores[0] >= r.scores[1] - 1e-9);
}

TEST_CASE("plackett_luce recovers the two-system win ratio") {
  // Decisive cells split 3:1, no ties: worth ratio must equal 3.
  const ResponseTensor R = make_tensor(2, 4, 1, 1, {1, 1, 1, 0, 0, 0, 0, 1});
  const MethodResult r = listwise_fit(R, ListwiseModel::kPlackettLuce);
  CHECK(std::exp(r.scores[0] - r.scores[1]) == doctest::Approx(3.0).epsilon(1e-8));
  const std::vector<double>& worth = r.diagnostics.at("worth");
  CHECK(worth[0] + worth[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("listwise log-likelihood traces never decrease") {
  RandomSource rng(17);
  for (ListwiseModel model : {ListwiseModel::kPlackettLuce, ListwiseModel::kDavidsonLuce,
                              ListwiseModel::kBradleyTerryLuce}) {
    const ResponseTensor R = random_tensor(rng, 5, 10, 2, 2);
    const MethodResult r = listwise_fit(R, model);
    const std::vector<double>& ll = r.diagnostics.at("log_likelihood_trace");
    REQUIRE(!ll.empty());
    for (size_t i = 1; i < ll.size(); ++i) CHECK(ll[i] >= ll[i - 1] - 1e-12);
  }
}

TEST_CASE("listwise fits are deterministic for a fixed seed") {
  RandomSource rng(19);
  const ResponseTensor R = random_tensor(rng, 4, 8, 2, 2);
  for (ListwiseModel model : {ListwiseModel::kPlackettLuce, ListwiseModel::kDavidsonLuce,
                              ListwiseModel::kBradleyTerryLuce}) {
    const MethodResult a = listwise_fit(R, model);
    const MethodResult b = listwise_fit(R, model);
    CHECK(a.scores == b.scores);
  }
}

TEST_CASE("bradley_terry_luce agrees with pairwise bradley_terry gaps") {
  RandomSource rng(23);
  const ResponseTensor R = random_tensor(rng, 4, 12, 2, 1);
  const MethodResult btl = listwise_fit(R, ListwiseModel::kBradleyTerryLuce);
  const MethodResult bt = bradley_terry(R);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(btl.scores[a] - btl.scores[b] ==
            doctest::Approx(bt.scores[a] - bt.scores[b]).epsilon(1e-6));
}

TEST_CASE("uninformative ballots give a noted total tie") {
  const ResponseTensor R = make_tensor(3, 2, 2, 1, std::vector<int>(12, 1));
  const MethodResult r = listwise_fit(R, ListwiseModel::kPlackettLuce);
  bool noted = false;
  for (const std::string& n : r.notes) noted |= n.find("total tie") != std::string::npos;
  CHECK(noted);
  for (double s : r.scores) CHECK(s == doctest::Approx(std::log(1.0 / 3)).epsilon(1e-12));
  CHECK(r.ranks.competition == std::vector<double>{1, 1, 1});
}

TEST_CASE("davidson_luce handles heavy ties and keeps the winner on top") {
  // System 0 wins two cells outright, rest are full ties.
  const ResponseTensor R = make_tensor(2, 4, 1, 1, {1, 1, 1, 0, 0, 0, 1, 0});
  const MethodResult r = listwise_fit(R, ListwiseModel::kDavidsonLuce);
  CHECK(r.scores[0] > r.scores[1]);
  CHECK(std::isfinite(r.scores[1]));
}

TEST_CASE("plackett_luce tie handling preserves a clear majority") {
  // Ties on half the cells plus a 3:0 decisive record for system 0.
  const ResponseTensor R = make_tensor(2, 6, 1, 1, {1, 1, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0});
  const MethodResult r = listwise_fit(R, ListwiseModel::kPlackettLuce);
  CHECK(r.scores[0] > r.scores[1]);
}

}  // TEST_SUITE
