#include <doctest.h>

#include <cmath>
#include <limits>

#include "ranklab/priors.hpp"

using namespace ranklab;

namespace {

// Trapezoid mass of exp(log_density) over [lo, hi].
double integrate_density(const Prior& p, double lo, double hi, int steps) {
  const double h = (hi - lo) / steps;
  double mass = 0.0;
  double prev = std::exp(p.log_density(lo));
  for (int i = 1; i <= steps; ++i) {
    const double cur = std::exp(p.log_density(lo + i * h));
    mass += 0.5 * (prev + cur) * h;
    prev = cur;
  }
  return mass;
}

}  // namespace

TEST_SUITE("priors") {

TEST_CASE("closed-form values") {
  CHECK(Prior::gaussian(0, 1).log_density(0) ==
        doctest::Approx(-0.5 * std::log(2 * M_PI)).epsilon(1e-12));
  CHECK(Prior::laplace(0, 1).log_density(0) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK(Prior::cauchy(0, 1).log_density(0) == doctest::Approx(-std::log(M_PI)).epsilon(1e-12));
  CHECK(Prior::uniform(0, 1).log_density(0.5) == doctest::Approx(0.0));
  CHECK(Prior::uniform(0, 1).log_density(2.0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("default prior is standard gaussian") {
  const Prior p = default_prior();
  CHECK(p.kind() == "gaussian");
  CHECK(p.log_density(0) == doctest::Approx(-0.9189385).epsilon(1e-6));
  CHECK(p.log_density(1) == doctest::Approx(Prior::gaussian(0, 1).log_density(1)));
}

TEST_CASE("densities integrate to one") {
  CHECK(integrate_density(Prior::gaussian(0.3, 1.7), -20, 20, 40000) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integrate_density(Prior::laplace(-1, 0.5), -25, 25, 50000) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integrate_density(Prior::uniform(-2, 3), -2, 3, 1000) ==
        doctest::Approx(1.0).epsilon(1e-6));
  // Heavy tails: substitute x = tan(u) so the infinite range becomes (-pi/2, pi/2).
  const Prior cauchy = Prior::cauchy(0.5, 2.0);
  const int steps = 200000;
  const double lo = -M_PI / 2 + 1e-9, hi = M_PI / 2 - 1e-9;
  const double h = (hi - lo) / steps;
  double mass = 0.0;
  auto f = [&](double u) {
    const double x = std::tan(u);
    const double jac = 1.0 / (std::cos(u) * std::cos(u));
    return std::exp(cauchy.log_density(x)) * jac;
  };
  double prev = f(lo);
  for (int i = 1; i <= steps; ++i) {
    const double cur = f(lo + i * h);
    mass += 0.5 * (prev + cur) * h;
    prev = cur;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("empirical KDE is finite at sample points and integrates to one") {
  const std::vector<double> sample{-1.0, 0.0, 0.2, 2.5};
  const Prior p = Prior::empirical(sample);
  CHECK(p.bandwidth() > 0);
  for (double x : sample) CHECK(std::isfinite(p.log_density(x)));
  CHECK(integrate_density(p, -30, 30, 60000) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("custom prior wraps the callback") {
  const Prior p = Prior::custom([](double x) { return -std::abs(x); });
  CHECK(p.log_density(3.0) == doctest::Approx(-3.0));
  CHECK(p.kind() == "custom");
}

TEST_CASE("non-finite query throws") {
  CHECK_THROWS_AS(Prior::gaussian(0, 1).log_density(std::nan("")), std::invalid_argument);
}

TEST_CASE("invalid parameters throw") {
  CHECK_THROWS_AS(Prior::gaussian(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Prior::laplace(0, -1), std::invalid_argument);
  CHECK_THROWS_AS(Prior::uniform(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(Prior::empirical({}), std::invalid_argument);
}

TEST_CASE("json parsing round trip") {
  const Prior g = prior_from_json(R"({"kind":"gaussian","mu":1.5,"sigma":2})");
  CHECK(g.kind() == "gaussian");
  CHECK(g.log_density(1.5) == doctest::Approx(Prior::gaussian(1.5, 2).log_density(1.5)));
  const Prior u = prior_from_json(R"({"kind":"uniform","lo":0,"hi":2})");
  CHECK(u.log_density(1) == doctest::Approx(std::log(0.5)));
  const Prior e = prior_from_json(R"({"kind":"empirical","sample":[0,1,2]})");
  CHECK(std::isfinite(e.log_density(1.0)));
  CHECK_THROWS(prior_from_json(R"({"kind":"triangle"})"));
  CHECK_THROWS(prior_from_json("not json"));
}

}  // TEST_SUITE
