#include "ranklab/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ranklab/io.hpp"

namespace ranklab {
namespace {

constexpr const char* kCsvHeader =
    "experiment,method,L,M,N,n,seed,tau_b,mae,top1,seconds,replicate,status";

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(values[i]);
  }
  return s;
}

std::string join_strings(const std::vector<std::string>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += values[i];
  }
  return s;
}

void require_known(const std::vector<std::string>& methods) {
  if (methods.empty()) throw std::invalid_argument("no methods given");
  for (const std::string& m : methods)
    if (!has_method(m)) throw std::invalid_argument("unknown method '" + m + "'");
}

std::vector<std::pair<std::string, std::string>> generator_provenance(
    const GeneratorConfig& g) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("L", std::to_string(g.L));
  kv.emplace_back("M", std::to_string(g.M));
  kv.emplace_back("N_max", std::to_string(g.N_max));
  kv.emplace_back("ability_gap", format_double(g.ability_gap));
  kv.emplace_back("difficulty_spread", format_double(g.difficulty_spread));
  kv.emplace_back("tie_pair", g.tie_pair ? std::to_string(g.tie_pair->first + 1) + "," +
                                               std::to_string(g.tie_pair->second + 1)
                                         : "none");
  kv.emplace_back("rank_scheme", "fractional");
  return kv;
}

struct Metrics {
  std::optional<double> tau;
  double mae, top1;
};

Metrics compare_ranks(const std::vector<double>& predicted, const std::vector<double>& truth) {
  Metrics m;
  m.tau = kendall_tau_b(predicted, truth);
  m.mae = mean_abs_rank_error(predicted, truth);
  m.top1 = harness_top1(predicted, truth);
  return m;
}

ReportRow metric_row(const std::string& experiment, const std::string& method,
                     const ResponseTensor& R, std::uint64_t seed, const Metrics& m) {
  ReportRow row;
  row.experiment = experiment;
  row.method = method;
  row.L = R.L();
  row.M = R.M();
  row.N = R.N();
  row.seed = seed;
  row.tau_b = m.tau;
  row.mae = m.mae;
  row.top1 = m.top1;
  row.status = m.tau ? "ok" : "undefined";
  return row;
}

// ---- CSV helpers ----

void append_cell(std::string& line, const std::optional<double>& v) {
  line += ',';
  if (v) line += format_double(*v);
}

void append_cell(std::string& line, const std::optional<int>& v) {
  line += ',';
  if (v) line += std::to_string(*v);
}

std::optional<double> parse_opt_double(const std::string& field, const std::string& where) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), last, v);
  if (ec != std::errc() || ptr != last)
    throw io_error(where + ": bad numeric field '" + field + "'");
  return v;
}

std::optional<long long> parse_opt_int(const std::string& field, const std::string& where) {
  if (field.empty()) return std::nullopt;
  long long v = 0;
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), last, v);
  if (ec != std::errc() || ptr != last)
    throw io_error(where + ": bad integer field '" + field + "'");
  return v;
}

// ---- aggregation for json/svg ----

struct MeanCell {
  int defined = 0;
  int count = 0;
  double tau = 0.0, mae = 0.0, top1 = 0.0, seconds = 0.0;
  int mae_n = 0, top1_n = 0, seconds_n = 0;
};

int x_of(const ReportRow& row) {
  if (row.experiment == "stability") return row.n.value_or(0);
  if (row.experiment == "runtime") return row.M;
  return row.N;
}

std::map<std::tuple<std::string, std::string, int>, MeanCell> aggregate(
    const std::vector<ReportRow>& rows) {
  std::map<std::tuple<std::string, std::string, int>, MeanCell> cells;
  for (const ReportRow& r : rows) {
    if (r.status == "skipped") continue;
    MeanCell& c = cells[{r.experiment, r.method, x_of(r)}];
    ++c.count;
    if (r.tau_b) {
      ++c.defined;
      c.tau += *r.tau_b;
    }
    if (r.mae) {
      ++c.mae_n;
      c.mae += *r.mae;
    }
    if (r.top1) {
      ++c.top1_n;
      c.top1 += *r.top1;
    }
    if (r.seconds) {
      ++c.seconds_n;
      c.seconds += *r.seconds;
    }
  }
  return cells;
}

// ---- svg ----

const char* kPalette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt4g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::vector<std::string> default_recovery_methods() {
  return {"avg", "bayes", "bradley_terry_davidson", "rasch", "pagerank", "plackett_luce", "elo"};
}

std::vector<std::string> default_stability_methods() {
  return {"avg",          "bayes", "pass_at_k", "g_pass_at_k_tau",
          "mg_pass_at_k", "rasch", "pagerank",  "elo"};
}

std::vector<std::string> default_runtime_methods() {
  return {"avg",           "bayes", "borda",        "pagerank",     "alpharank",
          "plackett_luce", "elo",   "bradley_terry", "kemeny_young", "rasch_mml"};
}

Generated generate(const GeneratorConfig& config, std::uint64_t seed) {
  if (config.L < 2 || config.M < 1 || config.N_max < 1)
    throw std::invalid_argument("generate: need L >= 2, M >= 1, N_max >= 1");
  if (config.tie_pair) {
    const auto [a, b] = *config.tie_pair;
    if (a == b || a < 0 || b < 0 || a >= config.L || b >= config.L)
      throw std::invalid_argument("generate: tie_pair indices must be distinct and in [0, L)");
  }

  std::vector<double> theta(config.L);
  const double offset = (config.L - 1) * config.ability_gap / 2.0;
  for (int l = 0; l < config.L; ++l)
    theta[l] = (config.L - 1 - l) * config.ability_gap - offset;
  if (config.tie_pair) theta[config.tie_pair->second] = theta[config.tie_pair->first];

  RandomSource rng(seed);
  std::vector<double> b(config.M);
  for (int m = 0; m < config.M; ++m) b[m] = config.difficulty_spread * rng.normal();

  ResponseTensor R(config.L, config.M, config.N_max, 1);
  for (int l = 0; l < config.L; ++l)
    for (int m = 0; m < config.M; ++m) {
      const double p = logistic(theta[l] - b[m]);
      for (int n = 0; n < config.N_max; ++n) R(l, m, n) = rng.uniform01() < p ? 1 : 0;
    }

  Generated g;
  g.truth = rank_scores(theta, RankScheme::kFractional, 0.0);
  g.theta = std::move(theta);
  g.tensor = std::move(R);
  return g;
}

double harness_top1(const std::vector<double>& predicted_ranks,
                    const std::vector<double>& reference_ranks) {
  const std::size_t L = predicted_ranks.size();
  auto top_count = [L](const std::vector<double>& ranks) {
    const double best = *std::min_element(ranks.begin(), ranks.end());
    std::size_t c = 0;
    for (double r : ranks)
      if (r == best) ++c;
    return c;
  };
  const bool pred_degenerate = top_count(predicted_ranks) == L;
  const bool ref_degenerate = top_count(reference_ranks) == L;
  if (pred_degenerate && ref_degenerate) return 1.0;
  if (pred_degenerate || ref_degenerate) return 0.0;
  return top1_agreement(predicted_ranks, reference_ranks);
}

ExperimentReport run_recovery(const std::vector<std::string>& methods,
                              const RecoveryConfig& config) {
  require_known(methods);
  for (int t : config.trial_counts)
    if (t < 1 || t > config.gen.N_max)
      throw std::invalid_argument("trial count " + std::to_string(t) + " outside [1, N_max]");
  if (config.seeds.empty()) throw std::invalid_argument("run_recovery: no seeds");

  ExperimentReport rep;
  rep.config = generator_provenance(config.gen);
  rep.config.emplace_back("experiment", "recovery");
  rep.config.emplace_back("trial_counts", join(config.trial_counts));
  rep.config.emplace_back("seeds", join(config.seeds));
  rep.config.emplace_back("methods", join_strings(methods));

  for (std::uint64_t seed : config.seeds) {
    const Generated g = generate(config.gen, seed);
    for (int N : config.trial_counts) {
      const ResponseTensor Rn = g.tensor.truncate_trials(N);
      for (const std::string& method : methods) {
        MethodOptions opts;
        opts.seed = seed;
        const MethodResult res = run_method(method, Rn, opts);
        rep.rows.push_back(
            metric_row("recovery", method, Rn, seed, compare_ranks(res.ranks.fractional, g.truth)));
      }
    }
  }
  return rep;
}

ExperimentReport run_stability(const std::vector<std::string>& methods,
                               const StabilityConfig& config) {
  require_known(methods);
  for (int n : config.budgets)
    if (n < 1 || n > config.gen.N_max)
      throw std::invalid_argument("budget " + std::to_string(n) + " exceeds N_max");
  if (config.seeds.empty()) throw std::invalid_argument("run_stability: no seeds");

  ExperimentReport rep;
  rep.config = generator_provenance(config.gen);
  rep.config.emplace_back("experiment", "stability");
  rep.config.emplace_back("budgets", join(config.budgets));
  rep.config.emplace_back("seeds", join(config.seeds));
  rep.config.emplace_back("methods", join_strings(methods));
  rep.config.emplace_back("reference", "bayes at N_max");

  for (std::uint64_t seed : config.seeds) {
    const Generated g = generate(config.gen, seed);
    MethodOptions ref_opts;
    ref_opts.seed = seed;
    const std::vector<double> reference =
        run_method("bayes", g.tensor, ref_opts).ranks.fractional;
    for (int n : config.budgets) {
      const ResponseTensor Rn = g.tensor.truncate_trials(n);
      for (const std::string& method : methods) {
        MethodOptions opts;
        opts.seed = seed;
        const MethodResult res = run_method(method, Rn, opts);
        ReportRow row =
            metric_row("stability", method, Rn, seed, compare_ranks(res.ranks.fractional, reference));
        row.N = config.gen.N_max;
        row.n = n;
        rep.rows.push_back(std::move(row));
      }
    }
  }
  return rep;
}

ExperimentReport run_runtime(const std::vector<std::string>& methods,
                             const RuntimeConfig& config) {
  require_known(methods);
  if (config.replicates < 1) throw std::invalid_argument("run_runtime: replicates must be >= 1");

  ExperimentReport rep;
  rep.config.emplace_back("experiment", "runtime");
  rep.config.emplace_back("systems", join(config.systems));
  rep.config.emplace_back("tasks", join(config.tasks));
  rep.config.emplace_back("trials", join(config.trials));
  rep.config.emplace_back("replicates", std::to_string(config.replicates));
  rep.config.emplace_back("seed", std::to_string(config.seed));
  rep.config.emplace_back("methods", join_strings(methods));

  for (int L : config.systems)
    for (int M : config.tasks)
      for (int N : config.trials) {
        GeneratorConfig gen = config.base;
        gen.L = L;
        gen.M = M;
        gen.N_max = N;
        if (gen.tie_pair && (gen.tie_pair->first >= L || gen.tie_pair->second >= L))
          gen.tie_pair.reset();
        const Generated g = generate(gen, config.seed);

        for (const std::string& method : methods) {
          if (method == "kemeny_young" && L > 8) {
            ReportRow row;
            row.experiment = "runtime";
            row.method = method;
            row.L = L;
            row.M = M;
            row.N = N;
            row.seed = config.seed;
            row.status = "skipped";
            row.note = "kemeny_young requires L <= 8";
            rep.rows.push_back(std::move(row));
            continue;
          }
          MethodOptions opts;
          opts.seed = config.seed;
          run_method(method, g.tensor, opts);  // warm-up
          for (int rep_i = 1; rep_i <= config.replicates; ++rep_i) {
            const auto start = std::chrono::steady_clock::now();
            run_method(method, g.tensor, opts);
            const auto stop = std::chrono::steady_clock::now();
            ReportRow row;
            row.experiment = "runtime";
            row.method = method;
            row.L = L;
            row.M = M;
            row.N = N;
            row.seed = config.seed;
            row.replicate = rep_i;
            row.seconds = std::chrono::duration<double>(stop - start).count();
            rep.rows.push_back(std::move(row));
          }
        }
      }
  return rep;
}

void emit_csv(const ExperimentReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << kCsvHeader << '\n';
  for (const ReportRow& r : report.rows) {
    std::string line = r.experiment + ',' + r.method + ',' + std::to_string(r.L) + ',' +
                       std::to_string(r.M) + ',' + std::to_string(r.N);
    append_cell(line, r.n);
    line += ',';
    if (r.seed) line += std::to_string(*r.seed);
    append_cell(line, r.tau_b);
    append_cell(line, r.mae);
    append_cell(line, r.top1);
    append_cell(line, r.seconds);
    append_cell(line, r.replicate);
    line += ',' + r.status;
    out << line << '\n';
  }
  if (!out) throw io_error("failed writing '" + path + "'");
}

std::vector<ReportRow> read_report_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw io_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw io_error(path + ": unexpected header '" + line + "'");

  std::vector<ReportRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (!line.empty() && line.back() == ',') f.push_back("");
    const std::string where = path + ":" + std::to_string(line_no);
    if (f.size() != 13) throw io_error(where + ": expected 13 fields, got " +
                                       std::to_string(f.size()));
    ReportRow r;
    r.experiment = f[0];
    r.method = f[1];
    r.L = static_cast<int>(parse_opt_int(f[2], where).value_or(0));
    r.M = static_cast<int>(parse_opt_int(f[3], where).value_or(0));
    r.N = static_cast<int>(parse_opt_int(f[4], where).value_or(0));
    if (auto v = parse_opt_int(f[5], where)) r.n = static_cast<int>(*v);
    if (auto v = parse_opt_int(f[6], where)) r.seed = static_cast<std::uint64_t>(*v);
    r.tau_b = parse_opt_double(f[7], where);
    r.mae = parse_opt_double(f[8], where);
    r.top1 = parse_opt_double(f[9], where);
    r.seconds = parse_opt_double(f[10], where);
    if (auto v = parse_opt_int(f[11], where)) r.replicate = static_cast<int>(*v);
    r.status = f[12];
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_json(const ExperimentReport& report, const std::string& path) {
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [k, v] : report.config) config[k] = v;

  nlohmann::json rows = nlohmann::json::array();
  auto put = [](nlohmann::json& j, const char* key, const std::optional<double>& v) {
    j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  for (const ReportRow& r : report.rows) {
    nlohmann::json j;
    j["experiment"] = r.experiment;
    j["method"] = r.method;
    j["L"] = r.L;
    j["M"] = r.M;
    j["N"] = r.N;
    j["n"] = r.n ? nlohmann::json(*r.n) : nlohmann::json(nullptr);
    j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
    put(j, "tau_b", r.tau_b);
    put(j, "mae", r.mae);
    put(j, "top1", r.top1);
    put(j, "seconds", r.seconds);
    j["replicate"] = r.replicate ? nlohmann::json(*r.replicate) : nlohmann::json(nullptr);
    j["status"] = r.status;
    if (!r.note.empty()) j["note"] = r.note;
    rows.push_back(std::move(j));
  }

  nlohmann::json means = nlohmann::json::array();
  for (const auto& [key, cell] : aggregate(report.rows)) {
    const auto& [experiment, method, x] = key;
    nlohmann::json j;
    j["experiment"] = experiment;
    j["method"] = method;
    j["x"] = x;
    j["cells"] = cell.count;
    j["tau_b"] = cell.defined ? nlohmann::json(cell.tau / cell.defined) : nlohmann::json(nullptr);
    j["tau_b_defined"] = cell.defined;
    j["mae"] = cell.mae_n ? nlohmann::json(cell.mae / cell.mae_n) : nlohmann::json(nullptr);
    j["top1"] = cell.top1_n ? nlohmann::json(cell.top1 / cell.top1_n) : nlohmann::json(nullptr);
    j["seconds"] =
        cell.seconds_n ? nlohmann::json(cell.seconds / cell.seconds_n) : nlohmann::json(nullptr);
    means.push_back(std::move(j));
  }

  nlohmann::json doc;
  doc["config"] = std::move(config);
  doc["rows"] = std::move(rows);
  doc["means"] = std::move(means);
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw io_error("failed writing '" + path + "'");
}

void emit_svg(const ExperimentReport& report, const std::string& path) {
  const std::string experiment = report.rows.empty() ? "recovery" : report.rows[0].experiment;
  const bool runtime = experiment == "runtime";
  const std::string x_label =
      experiment == "recovery" ? "N (trials)" : (runtime ? "M (tasks)" : "n (trial budget)");
  const std::string y_label = runtime ? "seconds (mean)" : "tau_b (mean)";

  // series[method][x] = mean metric
  std::map<std::string, std::map<int, double>> series;
  std::set<int> xs;
  for (const auto& [key, cell] : aggregate(report.rows)) {
    const auto& [exp_name, method, x] = key;
    if (exp_name != experiment) continue;
    if (runtime) {
      if (cell.seconds_n) {
        series[method][x] = cell.seconds / cell.seconds_n;
        xs.insert(x);
      }
    } else if (cell.defined) {
      series[method][x] = cell.tau / cell.defined;
      xs.insert(x);
    } else {
      xs.insert(x);  // keep the tick; the line just skips this x
    }
  }

  const double width = 720, height = 440;
  const double left = 70, right = width - 170, top = 40, bottom = height - 60;
  std::vector<int> xv(xs.begin(), xs.end());

  double ymin = 1e308, ymax = -1e308;
  for (const auto& [m, pts] : series)
    for (const auto& [x, y] : pts) {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (ymin > ymax) {
    ymin = 0.0;
    ymax = 1.0;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  auto x_pos = [&](int idx) {
    if (xv.size() <= 1) return (left + right) / 2.0;
    return left + (right - left) * idx / static_cast<double>(xv.size() - 1);
  };
  auto y_pos = [&](double v) { return bottom - (bottom - top) * (v - ymin) / (ymax - ymin); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "  <text x=\"" << fmt2((left + right) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << experiment << "</text>\n";

  svg << "  <line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(bottom) << "\" x2=\"" << fmt2(right)
      << "\" y2=\"" << fmt2(bottom) << "\" stroke=\"black\"/>\n";
  svg << "  <line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(top) << "\" x2=\"" << fmt2(left)
      << "\" y2=\"" << fmt2(bottom) << "\" stroke=\"black\"/>\n";

  for (std::size_t i = 0; i < xv.size(); ++i) {
    const double px = x_pos(static_cast<int>(i));
    svg << "  <line x1=\"" << fmt2(px) << "\" y1=\"" << fmt2(bottom) << "\" x2=\"" << fmt2(px)
        << "\" y2=\"" << fmt2(bottom + 5) << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << fmt2(px) << "\" y=\"" << fmt2(bottom + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << xv[i]
        << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double v = ymin + (ymax - ymin) * t / 4.0;
    const double py = y_pos(v);
    svg << "  <line x1=\"" << fmt2(left - 5) << "\" y1=\"" << fmt2(py) << "\" x2=\"" << fmt2(left)
        << "\" y2=\"" << fmt2(py) << "\" stroke=\"black\"/>\n";
    svg << "  <text x=\"" << fmt2(left - 9) << "\" y=\"" << fmt2(py + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt4g(v)
        << "</text>\n";
  }
  svg << "  <text x=\"" << fmt2((left + right) / 2) << "\" y=\"" << fmt2(height - 14)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
      << "</text>\n";
  svg << "  <text x=\"20\" y=\"" << fmt2((top + bottom) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 20 "
      << fmt2((top + bottom) / 2) << ")\">" << y_label << "</text>\n";

  int color = 0;
  double legend_y = top + 10;
  for (const auto& [method, pts] : series) {
    const char* stroke = kPalette[color % 10];
    ++color;
    std::string points;
    int drawn = 0;
    for (std::size_t i = 0; i < xv.size(); ++i) {
      auto it = pts.find(xv[i]);
      if (it == pts.end()) {
        if (drawn >= 2)
          svg << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" "
              << "points=\"" << points << "\"/>\n";
        points.clear();
        drawn = 0;
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fmt2(x_pos(static_cast<int>(i))) + "," + fmt2(y_pos(it->second));
      ++drawn;
      svg << "  <circle cx=\"" << fmt2(x_pos(static_cast<int>(i))) << "\" cy=\""
          << fmt2(y_pos(it->second)) << "\" r=\"2.5\" fill=\"" << stroke << "\"/>\n";
    }
    if (drawn >= 2)
      svg << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" "
          << "points=\"" << points << "\"/>\n";
    svg << "  <line x1=\"" << fmt2(right + 12) << "\" y1=\"" << fmt2(legend_y) << "\" x2=\""
        << fmt2(right + 32) << "\" y2=\"" << fmt2(legend_y) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"2\"/>\n";
    svg << "  <text x=\"" << fmt2(right + 38) << "\" y=\"" << fmt2(legend_y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << method << "</text>\n";
    legend_y += 18;
  }
  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << svg.str();
  if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace ranklab
