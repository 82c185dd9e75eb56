#include "ranklab/priors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace ranklab {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double silverman_bandwidth(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sd = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;

  std::vector<double> s = x;
  std::sort(s.begin(), s.end());
  auto quantile = [&](double q) {
    const double pos = q * (n - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return i + 1 < s.size() ? s[i] * (1 - frac) + s[i + 1] * frac : s[i];
  };
  const double iqr = quantile(0.75) - quantile(0.25);

  double spread = sd;
  if (iqr > 0) spread = std::min(spread, iqr / 1.34);
  if (spread <= 0) spread = 1.0;  // degenerate sample, any positive width works
  return 0.9 * spread * std::pow(n, -0.2);
}

}  // namespace

Prior Prior::gaussian(double mu, double sigma) {
  if (sigma <= 0) throw std::invalid_argument("gaussian prior needs sigma > 0");
  Prior p;
  p.kind_ = "gaussian";
  p.a_ = mu;
  p.b_ = sigma;
  return p;
}

Prior Prior::laplace(double mu, double b) {
  if (b <= 0) throw std::invalid_argument("laplace prior needs b > 0");
  Prior p;
  p.kind_ = "laplace";
  p.a_ = mu;
  p.b_ = b;
  return p;
}

Prior Prior::cauchy(double x0, double gamma) {
  if (gamma <= 0) throw std::invalid_argument("cauchy prior needs gamma > 0");
  Prior p;
  p.kind_ = "cauchy";
  p.a_ = x0;
  p.b_ = gamma;
  return p;
}

Prior Prior::uniform(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("uniform prior needs lo < hi");
  Prior p;
  p.kind_ = "uniform";
  p.a_ = lo;
  p.b_ = hi;
  return p;
}

Prior Prior::custom(std::function<double(double)> log_density) {
  if (!log_density) throw std::invalid_argument("custom prior needs a callback");
  Prior p;
  p.kind_ = "custom";
  p.fn_ = std::move(log_density);
  return p;
}

Prior Prior::empirical(std::vector<double> sample, std::optional<double> bandwidth) {
  if (sample.empty()) throw std::invalid_argument("empirical prior needs a non-empty sample");
  for (double v : sample)
    if (!std::isfinite(v)) throw std::invalid_argument("empirical prior sample not finite");
  Prior p;
  p.kind_ = "empirical";
  p.b_ = bandwidth ? *bandwidth : silverman_bandwidth(sample);
  if (p.b_ <= 0) throw std::invalid_argument("empirical prior needs bandwidth > 0");
  p.sample_ = std::move(sample);
  return p;
}

double Prior::log_density(double x) const {
  if (!std::isfinite(x)) throw std::invalid_argument("log_density: non-finite x");
  if (kind_ == "gaussian") {
    const double z = (x - a_) / b_;
    return -0.5 * z * z - std::log(b_) - 0.5 * kLog2Pi;
  }
  if (kind_ == "laplace") return -std::abs(x - a_) / b_ - std::log(2.0 * b_);
  if (kind_ == "cauchy") {
    const double z = (x - a_) / b_;
    return -std::log(M_PI * b_ * (1.0 + z * z));
  }
  if (kind_ == "uniform") {
    if (x < a_ || x > b_) return -std::numeric_limits<double>::infinity();
    return -std::log(b_ - a_);
  }
  if (kind_ == "custom") return fn_(x);
  // Empirical KDE via log-sum-exp over the kernels.
  double peak = -std::numeric_limits<double>::infinity();
  for (double xi : sample_) {
    const double z = (x - xi) / b_;
    peak = std::max(peak, -0.5 * z * z);
  }
  double acc = 0.0;
  for (double xi : sample_) {
    const double z = (x - xi) / b_;
    acc += std::exp(-0.5 * z * z - peak);
  }
  return peak + std::log(acc) - std::log(static_cast<double>(sample_.size()) * b_) -
         0.5 * kLog2Pi;
}

Prior default_prior() { return Prior::gaussian(0.0, 1.0); }

Prior prior_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("prior JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("prior JSON needs an object with a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  auto num = [&](const char* key, double def, bool required = false) {
    if (!j.contains(key)) {
      if (required) throw std::invalid_argument(std::string("prior JSON missing \"") + key + '"');
      return def;
    }
    return j.at(key).get<double>();
  };
  if (kind == "gaussian") return Prior::gaussian(num("mu", 0.0), num("sigma", 1.0));
  if (kind == "laplace") return Prior::laplace(num("mu", 0.0), num("b", 1.0));
  if (kind == "cauchy") return Prior::cauchy(num("x0", 0.0), num("gamma", 1.0));
  if (kind == "uniform") return Prior::uniform(num("lo", 0.0, true), num("hi", 1.0, true));
  if (kind == "empirical") {
    if (!j.contains("sample")) throw std::invalid_argument("empirical prior JSON needs \"sample\"");
    std::vector<double> sample = j.at("sample").get<std::vector<double>>();
    std::optional<double> bw;
    if (j.contains("bandwidth")) bw = j.at("bandwidth").get<double>();
    return Prior::empirical(std::move(sample), bw);
  }
  throw std::invalid_argument("unknown prior kind: " + kind);
}

}  // namespace ranklab
