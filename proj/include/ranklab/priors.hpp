#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ranklab/common.hpp"

namespace ranklab {

/// A univariate prior usable as a log-density by MAP-style estimators.
/// MAP methods apply priors per-parameter (independent product).
class Prior {
 public:
  static Prior gaussian(double mu, double sigma);
  static Prior laplace(double mu, double b);
  static Prior cauchy(double x0, double gamma);
  static Prior uniform(double lo, double hi);
  static Prior custom(std::function<double(double)> log_density);
  /// Gaussian kernel density over the sample; bandwidth defaults to
  /// Silverman's rule.
  static Prior empirical(std::vector<double> sample, std::optional<double> bandwidth = {});

  /// Log-density at x; may be -inf (e.g. uniform outside its support).
  /// Throws on non-finite x.
  double log_density(double x) const;

  const std::string& kind() const { return kind_; }
  double bandwidth() const { return b_; }

 private:
  Prior() = default;
  std::string kind_;
  double a_ = 0.0, b_ = 0.0;
  std::vector<double> sample_;
  std::function<double(double)> fn_;
};

/// gaussian(0, 1); what MAP methods use when the caller passes no prior.
Prior default_prior();

/// Parses {"kind":"gaussian","mu":0,"sigma":1} and the analogous forms for
/// laplace (mu, b), cauchy (x0, gamma), uniform (lo, hi) and empirical
/// (sample, optional bandwidth).
Prior prior_from_json(const std::string& text);

}  // namespace ranklab
