#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ranklab/registry.hpp"
#include "ranklab/tensor.hpp"

namespace ranklab {

/// Synthetic-data generator settings: L equally spaced latent abilities
/// (spacing ability_gap, centered on zero), optionally forcing one pair to
/// share an ability, task difficulties drawn from N(0, difficulty_spread^2),
/// binary outcomes drawn per cell with success probability
/// logistic(theta - b).
struct GeneratorConfig {
  int L = 11;
  int M = 500;
  int N_max = 32;
  double ability_gap = 0.25;
  double difficulty_spread = 1.0;
  std::optional<std::pair<int, int>> tie_pair = std::pair<int, int>{4, 5};  // 0-based
};

struct Generated {
  ResponseTensor tensor;
  std::vector<double> truth;  // fractional ranks of the abilities
  std::vector<double> theta;
};

/// Bit-reproducible per (config, seed): difficulties are drawn first, then
/// outcomes in (system, task, trial) order, one uniform draw per cell.
Generated generate(const GeneratorConfig& config, std::uint64_t seed);

/// One experiment cell. Optional fields stay empty where a column does not
/// apply (e.g. seconds outside the runtime experiment), so deterministic
/// experiments serialize identically across runs.
struct ReportRow {
  std::string experiment;  // recovery | stability | runtime
  std::string method;
  int L = 0, M = 0, N = 0;
  std::optional<int> n;          // stability trial budget
  std::optional<std::uint64_t> seed;
  std::optional<double> tau_b, mae, top1, seconds;
  std::optional<int> replicate;  // runtime replicate index (1-based)
  std::string status = "ok";     // ok | undefined | skipped
  std::string note;              // not serialized to CSV; excluded from equality

  friend bool operator==(const ReportRow& a, const ReportRow& b) {
    return a.experiment == b.experiment && a.method == b.method && a.L == b.L && a.M == b.M &&
           a.N == b.N && a.n == b.n && a.seed == b.seed && a.tau_b == b.tau_b &&
           a.mae == b.mae && a.top1 == b.top1 && a.seconds == b.seconds &&
           a.replicate == b.replicate && a.status == b.status;
  }
};

struct ExperimentReport {
  std::vector<std::pair<std::string, std::string>> config;  // provenance key/value pairs
  std::vector<ReportRow> rows;
};

struct RecoveryConfig {
  GeneratorConfig gen;
  std::vector<int> trial_counts = {1, 2, 4, 8, 16, 32};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4};
};

struct StabilityConfig {
  GeneratorConfig gen = [] {
    GeneratorConfig g;
    g.N_max = 64;
    return g;
  }();
  std::vector<int> budgets = {1, 2, 4, 8, 16, 32};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
};

struct RuntimeConfig {
  std::vector<int> systems = {4, 8, 16};
  std::vector<int> tasks = {100, 500, 1000};
  std::vector<int> trials = {1, 4};
  int replicates = 2;
  std::uint64_t seed = 1;
  GeneratorConfig base;  // gap/spread/tie settings reused across grid cells
};

/// Method sets used in the reported experiments.
std::vector<std::string> default_recovery_methods();
std::vector<std::string> default_stability_methods();
std::vector<std::string> default_runtime_methods();

/// Rank agreement between predicted and truth rankings per trial count,
/// averaged over seeds downstream. Rows carry tau_b, MAE and top-1 per
/// (method, N, seed).
ExperimentReport run_recovery(const std::vector<std::string>& methods,
                              const RecoveryConfig& config);

/// Agreement with a bayes reference ranking computed on the full tensor,
/// recomputed from the first n trials per budget.
ExperimentReport run_stability(const std::vector<std::string>& methods,
                               const StabilityConfig& config);

/// Wall-clock per method call, one warm-up plus `replicates` raw timings per
/// grid cell. kemeny_young cells with L > 8 are recorded as skipped.
ExperimentReport run_runtime(const std::vector<std::string>& methods,
                             const RuntimeConfig& config);

/// Top-1 agreement with a degenerate-tie guard: a side whose top set spans
/// all systems agrees with nothing (0.0) unless both sides are degenerate
/// (1.0); otherwise the plain Jaccard overlap of rank-1 sets.
double harness_top1(const std::vector<double>& predicted_ranks,
                    const std::vector<double>& reference_ranks);

/// CSV with the fixed header
/// experiment,method,L,M,N,n,seed,tau_b,mae,top1,seconds,replicate,status.
/// Empty cells encode absent optionals; doubles use shortest round-trip
/// formatting so identical reports serialize byte-identically.
void emit_csv(const ExperimentReport& report, const std::string& path);
std::vector<ReportRow> read_report_csv(const std::string& path);

/// JSON object {"config": {...}, "rows": [...], "means": [...]} with means
/// grouped per (experiment, method, x) where x is N, n, or M.
void emit_json(const ExperimentReport& report, const std::string& path);

/// Hand-rolled line chart: metric versus N (recovery), n (stability) or M
/// (runtime), one polyline per method, undefined cells omitted.
void emit_svg(const ExperimentReport& report, const std::string& path);

}  // namespace ranklab
