#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ranklab/method_result.hpp"
#include "ranklab/priors.hpp"
#include "ranklab/tensor.hpp"

namespace ranklab {

/// Options shared by every method behind the registry. Unused fields are
/// ignored by methods that do not consume them; unknown parameter keys are
/// rejected by validate_options.
struct MethodOptions {
  std::optional<Rubric> rubric;           // avg/bayes credit weights; identity by default
  std::optional<Prior> prior;             // MAP refinement / posterior sampling prior
  std::map<std::string, double> params;   // per-method numeric knobs (k, tau, damping, ...)
  std::uint64_t seed = 1;                 // all sampling methods draw from this
  std::optional<double> tie_tolerance;    // overrides the method's default rank tolerance
};

/// All method names accepted by run_method, grouped by family in a stable
/// order.
std::vector<std::string> method_names();

bool has_method(const std::string& name);

/// Throws std::invalid_argument on an unknown method name, an unknown
/// parameter key, or a malformed tie_tolerance. Safe to call before loading
/// data; parameter ranges are checked when run_method parses them.
void validate_options(const std::string& name, const MethodOptions& options);

/// Runs one ranking method on the tensor. Pass-family k larger than N is
/// clamped to N with an explanatory note (small trial budgets stay
/// computable); every other parameter is taken as given.
MethodResult run_method(const std::string& name, const ResponseTensor& R,
                        const MethodOptions& options = {});

}  // namespace ranklab
