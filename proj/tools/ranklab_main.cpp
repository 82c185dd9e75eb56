#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ranklab/harness.hpp"
#include "ranklab/io.hpp"
#include "ranklab/registry.hpp"
#include "ranklab/score_methods.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMethod = 2;

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitUsage;
}

int method_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitMethod;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), last, v);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("bad " + what + " '" + s + "'");
  return v;
}

long long parse_int(const std::string& s, const std::string& what) {
  long long v = 0;
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), last, v);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("bad " + what + " '" + s + "'");
  return v;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (const std::string& f : split(s, ','))
    out.push_back(static_cast<int>(parse_int(f, what)));
  return out;
}

std::optional<std::pair<int, int>> parse_tie_pair(const std::string& s, int L) {
  if (s == "none") return std::nullopt;
  const std::vector<std::string> f = split(s, ',');
  if (f.size() != 2) throw std::invalid_argument("tie pair must be 'a,b' (1-based) or 'none'");
  const int a = static_cast<int>(parse_int(f[0], "tie pair index"));
  const int b = static_cast<int>(parse_int(f[1], "tie pair index"));
  if (a < 1 || b < 1 || a > L || b > L || a == b)
    throw std::invalid_argument("tie pair indices must be distinct and in [1, L]");
  return std::pair<int, int>{a - 1, b - 1};
}

ranklab::MethodOptions build_options(const std::vector<std::string>& params,
                                     const std::string& rubric, const std::string& prior,
                                     std::uint64_t seed, std::optional<double> tie_tolerance) {
  ranklab::MethodOptions opts;
  opts.seed = seed;
  opts.tie_tolerance = tie_tolerance;
  for (const std::string& p : params) {
    const std::size_t eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--param expects key=value, got '" + p + "'");
    opts.params[p.substr(0, eq)] = parse_double(p.substr(eq + 1), "parameter value");
  }
  if (!rubric.empty()) {
    ranklab::Rubric w;
    for (const std::string& f : split(rubric, ','))
      w.weights.push_back(parse_double(f, "rubric weight"));
    opts.rubric = std::move(w);
  }
  if (!prior.empty()) opts.prior = ranklab::prior_from_json(prior);
  return opts;
}

nlohmann::json result_json(const std::string& method, const ranklab::MethodResult& res,
                           bool return_scores) {
  nlohmann::json j;
  j["method"] = method;
  j["ranks"] = {{"competition", res.ranks.competition},
                {"dense", res.ranks.dense},
                {"ordinal", res.ranks.ordinal},
                {"fractional", res.ranks.fractional}};
  if (return_scores) j["scores"] = res.scores;
  nlohmann::json diag = nlohmann::json::object();
  for (const auto& [k, v] : res.diagnostics) diag[k] = v;
  j["diagnostics"] = std::move(diag);
  j["notes"] = res.notes;
  return j;
}

void emit_report(const ranklab::ExperimentReport& report, const std::string& out_base,
                 const std::string& formats) {
  for (const std::string& f : split(formats, ',')) {
    if (f == "csv")
      ranklab::emit_csv(report, out_base + ".csv");
    else if (f == "json")
      ranklab::emit_json(report, out_base + ".json");
    else if (f == "svg")
      ranklab::emit_svg(report, out_base + ".svg");
    else
      throw std::invalid_argument("unknown format '" + f + "' (use csv, json, svg)");
  }
}

struct RankArgs {
  std::string input, method, rubric, prior, formats;
  std::vector<std::string> params;
  std::uint64_t seed = 1;
  double tie_tolerance = -1.0;  // <0 means method default
  bool return_scores = false;
};

int run_rank(const RankArgs& a) {
  ranklab::ResponseTensor R;
  ranklab::MethodOptions opts;
  try {
    if (!ranklab::has_method(a.method))
      throw std::invalid_argument("unknown method '" + a.method + "'");
    opts = build_options(a.params, a.rubric, a.prior, a.seed,
                         a.tie_tolerance < 0 ? std::nullopt
                                             : std::optional<double>(a.tie_tolerance));
    ranklab::validate_options(a.method, opts);
    R = ranklab::read_tensor(a.input);
    if (opts.rubric) opts.rubric->check(R.C());
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  try {
    const ranklab::MethodResult res = ranklab::run_method(a.method, R, opts);
    std::cout << result_json(a.method, res, a.return_scores).dump(2) << "\n";
  } catch (const std::exception& e) {
    return method_error(e.what());
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string input, rubric;
  double prior_strength = 1.0;
};

int run_evaluate(const EvaluateArgs& a) {
  ranklab::ResponseTensor R;
  ranklab::Rubric w;
  try {
    R = ranklab::read_tensor(a.input);
    if (R.L() != 1)
      throw std::invalid_argument("evaluate expects a single-system tensor (L = 1), got L = " +
                                  std::to_string(R.L()));
    if (!a.rubric.empty()) {
      for (const std::string& f : split(a.rubric, ','))
        w.weights.push_back(parse_double(f, "rubric weight"));
      w.check(R.C());
    } else {
      w = ranklab::identity_rubric(R.C());
    }
    if (a.prior_strength <= 0.0) throw std::invalid_argument("--prior-strength must be > 0");
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  try {
    ranklab::OutcomeMatrix E(R.M(), R.N());
    for (int m = 0; m < R.M(); ++m)
      for (int n = 0; n < R.N(); ++n) E(m, n) = R(0, m, n);
    const ranklab::BayesEstimate est = ranklab::bayes_evaluate(E, w, a.prior_strength);
    nlohmann::json j;
    j["mu"] = est.mu;
    j["sigma"] = est.sigma;
    std::cout << j.dump(2) << "\n";
  } catch (const std::exception& e) {
    return method_error(e.what());
  }
  return kExitOk;
}

struct GenerateArgs {
  int L = 11, M = 500, N = 32;
  double gap = 0.25, spread = 1.0;
  std::string tie_pair = "5,6";
  std::uint64_t seed = 1;
  std::string out, truth_out;
};

int run_generate(const GenerateArgs& a) {
  ranklab::GeneratorConfig cfg;
  try {
    cfg.L = a.L;
    cfg.M = a.M;
    cfg.N_max = a.N;
    cfg.ability_gap = a.gap;
    cfg.difficulty_spread = a.spread;
    cfg.tie_pair = parse_tie_pair(a.tie_pair, a.L);
    if (a.out.empty()) throw std::invalid_argument("--out is required");
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  try {
    const ranklab::Generated g = ranklab::generate(cfg, a.seed);
    ranklab::write_tensor(g.tensor, a.out);
    if (!a.truth_out.empty()) {
      nlohmann::json j;
      j["seed"] = a.seed;
      j["theta"] = g.theta;
      j["truth"] = g.truth;
      std::ofstream out(a.truth_out);
      if (!out) throw ranklab::io_error("cannot open '" + a.truth_out + "' for writing");
      out << j.dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    return method_error(e.what());
  }
  return kExitOk;
}

struct RecoverArgs {
  int L = 11, M = 500, N_max = 32, seeds = 4;
  double gap = 0.25, spread = 1.0;
  std::string tie_pair = "5,6", trials = "1,2,4,8,16,32";
  std::string methods, out = "recovery", formats = "csv,json,svg";
};

int run_recover(const RecoverArgs& a) {
  ranklab::RecoveryConfig cfg;
  std::vector<std::string> methods;
  try {
    cfg.gen.L = a.L;
    cfg.gen.M = a.M;
    cfg.gen.N_max = a.N_max;
    cfg.gen.ability_gap = a.gap;
    cfg.gen.difficulty_spread = a.spread;
    cfg.gen.tie_pair = parse_tie_pair(a.tie_pair, a.L);
    cfg.trial_counts = parse_int_list(a.trials, "trial count");
    if (a.seeds < 1) throw std::invalid_argument("--seeds must be >= 1");
    cfg.seeds.clear();
    for (int s = 1; s <= a.seeds; ++s) cfg.seeds.push_back(s);
    methods = a.methods.empty() ? ranklab::default_recovery_methods() : split(a.methods, ',');
    for (const std::string& m : methods)
      if (!ranklab::has_method(m)) throw std::invalid_argument("unknown method '" + m + "'");
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  try {
    emit_report(ranklab::run_recovery(methods, cfg), a.out, a.formats);
  } catch (const std::exception& e) {
    return method_error(e.what());
  }
  return kExitOk;
}

struct StabilityArgs {
  int L = 11, M = 500, N_max = 64, seeds = 10;
  double gap = 0.25, spread = 1.0;
  std::string tie_pair = "5,6", budgets = "1,2,4,8,16,32";
  std::string methods, out = "stability", formats = "csv,json,svg";
};

int run_stability_cmd(const StabilityArgs& a) {
  ranklab::StabilityConfig cfg;
  std::vector<std::string> methods;
  try {
    cfg.gen.L = a.L;
    cfg.gen.M = a.M;
    cfg.gen.N_max = a.N_max;
    cfg.gen.ability_gap = a.gap;
    cfg.gen.difficulty_spread = a.spread;
    cfg.gen.tie_pair = parse_tie_pair(a.tie_pair, a.L);
    cfg.budgets = parse_int_list(a.budgets, "budget");
    if (a.seeds < 1) throw std::invalid_argument("--seeds must be >= 1");
    cfg.seeds.clear();
    for (int s = 1; s <= a.seeds; ++s) cfg.seeds.push_back(s);
    methods = a.methods.empty() ? ranklab::default_stability_methods() : split(a.methods, ',');
    for (const std::string& m : methods)
      if (!ranklab::has_method(m)) throw std::invalid_argument("unknown method '" + m + "'");
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  try {
    emit_report(ranklab::run_stability(methods, cfg), a.out, a.formats);
  } catch (const std::exception& e) {
    return method_error(e.what());
  }
  return kExitOk;
}

struct RuntimeArgs {
  std::string systems = "4,8,16", tasks = "100,500,1000", trials = "1,4";
  int replicates = 2;
  std::uint64_t seed = 1;
  std::string methods, out = "runtime", formats = "csv,json,svg";
};

int run_runtime_cmd(const RuntimeArgs& a) {
  ranklab::RuntimeConfig cfg;
  std::vector<std::string> methods;
  try {
    cfg.systems = parse_int_list(a.systems, "system count");
    cfg.tasks = parse_int_list(a.tasks, "task count");
    cfg.trials = parse_int_list(a.trials, "trial count");
    cfg.replicates = a.replicates;
    cfg.seed = a.seed;
    methods = a.methods.empty() ? ranklab::default_runtime_methods() : split(a.methods, ',');
    for (const std::string& m : methods)
      if (!ranklab::has_method(m)) throw std::invalid_argument("unknown method '" + m + "'");
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  try {
    emit_report(ranklab::run_runtime(methods, cfg), a.out, a.formats);
  } catch (const std::exception& e) {
    return method_error(e.what());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ranking methods and experiments over response tensors"};
  app.require_subcommand(1);

  RankArgs rank_args;
  CLI::App* rank_cmd = app.add_subcommand("rank", "rank systems in a tensor file");
  rank_cmd->add_option("--input", rank_args.input, "tensor file (.csv or .json)")->required();
  rank_cmd->add_option("--method", rank_args.method, "method name")->required();
  rank_cmd->add_option("--rubric", rank_args.rubric, "comma-separated credit per outcome level");
  rank_cmd->add_option("--prior", rank_args.prior, "prior as JSON, e.g. {\"kind\":\"gaussian\",\"mu\":0,\"sigma\":1}");
  rank_cmd->add_option("--param", rank_args.params, "method parameter key=value (repeatable)");
  rank_cmd->add_option("--seed", rank_args.seed, "seed for sampling methods");
  rank_cmd->add_option("--tie-tolerance", rank_args.tie_tolerance,
                       "absolute score tolerance for rank ties");
  rank_cmd->add_flag("--return-scores", rank_args.return_scores, "include raw scores");

  EvaluateArgs eval_args;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "posterior mean/stddev for one system");
  eval_cmd->add_option("--input", eval_args.input, "single-system tensor file")->required();
  eval_cmd->add_option("--rubric", eval_args.rubric, "comma-separated credit per outcome level");
  eval_cmd->add_option("--prior-strength", eval_args.prior_strength, "Dirichlet prior strength");

  GenerateArgs gen_args;
  CLI::App* gen_cmd = app.add_subcommand("generate", "write a synthetic tensor");
  gen_cmd->add_option("--L", gen_args.L, "systems");
  gen_cmd->add_option("--M", gen_args.M, "tasks");
  gen_cmd->add_option("--N", gen_args.N, "trials");
  gen_cmd->add_option("--gap", gen_args.gap, "ability gap");
  gen_cmd->add_option("--spread", gen_args.spread, "difficulty spread");
  gen_cmd->add_option("--tie-pair", gen_args.tie_pair, "1-based 'a,b' or 'none'");
  gen_cmd->add_option("--seed", gen_args.seed, "generator seed");
  gen_cmd->add_option("--out", gen_args.out, "output tensor file")->required();
  gen_cmd->add_option("--truth-out", gen_args.truth_out, "write abilities and truth ranks JSON");

  RecoverArgs rec_args;
  CLI::App* rec_cmd = app.add_subcommand("recover", "rank recovery against synthetic truth");
  rec_cmd->add_option("--L", rec_args.L, "systems");
  rec_cmd->add_option("--M", rec_args.M, "tasks");
  rec_cmd->add_option("--N-max", rec_args.N_max, "generated trials");
  rec_cmd->add_option("--gap", rec_args.gap, "ability gap");
  rec_cmd->add_option("--spread", rec_args.spread, "difficulty spread");
  rec_cmd->add_option("--tie-pair", rec_args.tie_pair, "1-based 'a,b' or 'none'");
  rec_cmd->add_option("--trials", rec_args.trials, "comma list of trial counts");
  rec_cmd->add_option("--seeds", rec_args.seeds, "number of seeds (1..k)");
  rec_cmd->add_option("--methods", rec_args.methods, "comma list of methods");
  rec_cmd->add_option("--out", rec_args.out, "output base path");
  rec_cmd->add_option("--formats", rec_args.formats, "any of csv,json,svg");

  StabilityArgs stab_args;
  CLI::App* stab_cmd = app.add_subcommand("stability", "agreement with a full-data reference");
  stab_cmd->add_option("--L", stab_args.L, "systems");
  stab_cmd->add_option("--M", stab_args.M, "tasks");
  stab_cmd->add_option("--N-max", stab_args.N_max, "reference trials");
  stab_cmd->add_option("--gap", stab_args.gap, "ability gap");
  stab_cmd->add_option("--spread", stab_args.spread, "difficulty spread");
  stab_cmd->add_option("--tie-pair", stab_args.tie_pair, "1-based 'a,b' or 'none'");
  stab_cmd->add_option("--budgets", stab_args.budgets, "comma list of trial budgets");
  stab_cmd->add_option("--seeds", stab_args.seeds, "number of seeds (1..k)");
  stab_cmd->add_option("--methods", stab_args.methods, "comma list of methods");
  stab_cmd->add_option("--out", stab_args.out, "output base path");
  stab_cmd->add_option("--formats", stab_args.formats, "any of csv,json,svg");

  RuntimeArgs rt_args;
  CLI::App* rt_cmd = app.add_subcommand("runtime", "wall-clock per method over a size grid");
  rt_cmd->add_option("--systems", rt_args.systems, "comma list of L values");
  rt_cmd->add_option("--tasks", rt_args.tasks, "comma list of M values");
  rt_cmd->add_option("--trials", rt_args.trials, "comma list of N values");
  rt_cmd->add_option("--replicates", rt_args.replicates, "timed replicates per cell");
  rt_cmd->add_option("--seed", rt_args.seed, "generator seed");
  rt_cmd->add_option("--methods", rt_args.methods, "comma list of methods");
  rt_cmd->add_option("--out", rt_args.out, "output base path");
  rt_cmd->add_option("--formats", rt_args.formats, "any of csv,json,svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (rank_cmd->parsed()) return run_rank(rank_args);
  if (eval_cmd->parsed()) return run_evaluate(eval_args);
  if (gen_cmd->parsed()) return run_generate(gen_args);
  if (rec_cmd->parsed()) return run_recover(rec_args);
  if (stab_cmd->parsed()) return run_stability_cmd(stab_args);
  if (rt_cmd->parsed()) return run_runtime_cmd(rt_args);
  return usage_error("no subcommand given");
}
