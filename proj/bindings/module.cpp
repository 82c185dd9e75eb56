#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "ranklab/harness.hpp"
#include "ranklab/io.hpp"
#include "ranklab/registry.hpp"
#include "ranklab/score_methods.hpp"

namespace py = pybind11;

namespace {

using Nested = std::vector<std::vector<std::vector<int>>>;

ranklab::ResponseTensor tensor_from_nested(const Nested& data, std::optional<int> C) {
  if (data.empty() || data[0].empty() || data[0][0].empty())
    throw std::invalid_argument("data must be a non-empty L x M x N nested list");
  const int L = static_cast<int>(data.size());
  const int M = static_cast<int>(data[0].size());
  const int N = static_cast<int>(data[0][0].size());
  int top = 1;
  for (const auto& block : data) {
    if (static_cast<int>(block.size()) != M)
      throw std::invalid_argument("ragged data: every system needs M task rows");
    for (const auto& row : block) {
      if (static_cast<int>(row.size()) != N)
        throw std::invalid_argument("ragged data: every task row needs N trials");
      for (int v : row) top = std::max(top, v);
    }
  }
  ranklab::ResponseTensor R(L, M, N, C.value_or(top));
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < M; ++m)
      for (int n = 0; n < N; ++n) R(l, m, n) = data[l][m][n];
  R.validate();
  return R;
}

ranklab::MethodOptions options_from_args(const std::optional<std::vector<double>>& rubric,
                                         const std::map<std::string, double>& params,
                                         std::uint64_t seed,
                                         std::optional<double> tie_tolerance) {
  ranklab::MethodOptions opts;
  opts.params = params;
  opts.seed = seed;
  opts.tie_tolerance = tie_tolerance;
  if (rubric) opts.rubric = ranklab::Rubric{*rubric};
  return opts;
}

py::dict result_to_dict(const ranklab::MethodResult& res, bool return_scores) {
  py::dict ranks;
  ranks["competition"] = res.ranks.competition;
  ranks["dense"] = res.ranks.dense;
  ranks["ordinal"] = res.ranks.ordinal;
  ranks["fractional"] = res.ranks.fractional;
  py::dict out;
  out["ranks"] = ranks;
  if (return_scores) out["scores"] = res.scores;
  out["diagnostics"] = res.diagnostics;
  out["notes"] = res.notes;
  return out;
}

ranklab::RankScheme scheme_from_name(const std::string& name) {
  if (name == "competition") return ranklab::RankScheme::kCompetition;
  if (name == "dense") return ranklab::RankScheme::kDense;
  if (name == "ordinal") return ranklab::RankScheme::kOrdinal;
  if (name == "fractional") return ranklab::RankScheme::kFractional;
  throw std::invalid_argument("unknown rank scheme '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ranking methods over response tensors";

  m.def("method_names", &ranklab::method_names, "All registered method names.");

  m.def(
      "rank",
      [](const Nested& data, const std::string& method, std::optional<int> C,
         const std::optional<std::vector<double>>& rubric,
         const std::map<std::string, double>& params, std::uint64_t seed,
         std::optional<double> tie_tolerance, bool return_scores) {
        const ranklab::ResponseTensor R = tensor_from_nested(data, C);
        const ranklab::MethodOptions opts =
            options_from_args(rubric, params, seed, tie_tolerance);
        return result_to_dict(ranklab::run_method(method, R, opts), return_scores);
      },
      py::arg("data"), py::arg("method"), py::arg("C") = std::nullopt,
      py::arg("rubric") = std::nullopt, py::arg("params") = std::map<std::string, double>{},
      py::arg("seed") = 1, py::arg("tie_tolerance") = std::nullopt,
      py::arg("return_scores") = true,
      "Run one ranking method on an L x M x N nested list of outcomes.");

  m.def(
      "evaluate",
      [](const std::vector<std::vector<int>>& matrix,
         const std::optional<std::vector<double>>& rubric, double prior_strength) {
        if (matrix.empty() || matrix[0].empty())
          throw std::invalid_argument("matrix must be non-empty M x N");
        const int M = static_cast<int>(matrix.size());
        const int N = static_cast<int>(matrix[0].size());
        ranklab::OutcomeMatrix E(M, N);
        int top = 1;
        for (int i = 0; i < M; ++i) {
          if (static_cast<int>(matrix[i].size()) != N)
            throw std::invalid_argument("ragged matrix");
          for (int j = 0; j < N; ++j) {
            E(i, j) = matrix[i][j];
            top = std::max(top, matrix[i][j]);
          }
        }
        const ranklab::Rubric w =
            rubric ? ranklab::Rubric{*rubric} : ranklab::identity_rubric(top);
        w.check(top);
        const ranklab::BayesEstimate est = ranklab::bayes_evaluate(E, w, prior_strength);
        return py::make_tuple(est.mu, est.sigma);
      },
      py::arg("matrix"), py::arg("rubric") = std::nullopt, py::arg("prior_strength") = 1.0,
      "Posterior mean and stddev of rubric credit for one system's M x N outcomes.");

  m.def(
      "rank_scores",
      [](const std::vector<double>& scores, const std::string& scheme, double tolerance) {
        return ranklab::rank_scores(scores, scheme_from_name(scheme), tolerance);
      },
      py::arg("scores"), py::arg("scheme") = "competition", py::arg("tolerance") = 0.0,
      "Scores to ranks (higher score = rank 1) under one tie scheme.");

  m.def(
      "rank_views",
      [](const std::vector<double>& scores, double tolerance) {
        const ranklab::RankViews v = ranklab::rank_views(scores, tolerance);
        py::dict d;
        d["competition"] = v.competition;
        d["dense"] = v.dense;
        d["ordinal"] = v.ordinal;
        d["fractional"] = v.fractional;
        return d;
      },
      py::arg("scores"), py::arg("tolerance") = 0.0, "All four rank schemes at once.");

  m.def("kendall_tau_b", &ranklab::kendall_tau_b, py::arg("a"), py::arg("b"),
        "Tie-corrected rank correlation; None when a side is fully tied.");
  m.def("mean_abs_rank_error", &ranklab::mean_abs_rank_error, py::arg("a"), py::arg("b"));
  m.def("top1_agreement", &ranklab::top1_agreement, py::arg("a"), py::arg("b"),
        "Jaccard overlap of rank-1 sets.");

  m.def(
      "generate",
      [](int L, int M, int N, double gap, double spread,
         std::optional<std::pair<int, int>> tie_pair, std::uint64_t seed) {
        ranklab::GeneratorConfig cfg;
        cfg.L = L;
        cfg.M = M;
        cfg.N_max = N;
        cfg.ability_gap = gap;
        cfg.difficulty_spread = spread;
        if (tie_pair)
          cfg.tie_pair = std::pair<int, int>{tie_pair->first - 1, tie_pair->second - 1};
        else
          cfg.tie_pair = std::nullopt;
        const ranklab::Generated g = ranklab::generate(cfg, seed);
        Nested data(L, std::vector<std::vector<int>>(M, std::vector<int>(N)));
        for (int l = 0; l < L; ++l)
          for (int m = 0; m < M; ++m)
            for (int n = 0; n < N; ++n) data[l][m][n] = g.tensor(l, m, n);
        py::dict d;
        d["data"] = data;
        d["theta"] = g.theta;
        d["truth"] = g.truth;
        return d;
      },
      py::arg("L") = 11, py::arg("M") = 500, py::arg("N") = 32, py::arg("gap") = 0.25,
      py::arg("spread") = 1.0,
      py::arg("tie_pair") = std::optional<std::pair<int, int>>{{5, 6}}, py::arg("seed") = 1,
      "Synthetic binary tensor from equally spaced abilities (tie_pair is 1-based).");
}
