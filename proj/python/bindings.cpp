// Copyright 2026 The pacfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "pacfair/audit.hpp"
#include "pacfair/complexity.hpp"
#include "pacfair/encode.hpp"
#include "pacfair/error.hpp"
#include "pacfair/fairness.hpp"
#include "pacfair/logistic.hpp"
#include "pacfair/report.hpp"
#include "pacfair/schema.hpp"
#include "pacfair/table.hpp"

namespace py = pybind11;
using namespace pacfair;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix ToMatrix(const Array& a) {
  if (a.ndim() != 2) throw ValidationError("expected a 2-D array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  auto view = a.unchecked<2>();
  for (py::ssize_t r = 0; r < a.shape(0); ++r) {
    for (py::ssize_t c = 0; c < a.shape(1); ++c) m(r, c) = view(r, c);
  }
  return m;
}

Array FromMatrix(const Matrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

struct Loaded {
  RawTable table;
  Schema schema;
};

Loaded Load(const std::optional<std::string>& preset, const std::optional<std::string>& data,
            const std::optional<std::string>& format, const std::optional<std::string>& schema) {
  std::string src = data.value_or(preset ? "builtin:" + *preset : "");
  std::string sch = schema.value_or(preset ? "builtin:" + *preset : "");
  std::string fmt = format.value_or(preset ? std::string(ToString(BuiltinFormat(*preset))) : "csv");
  if (src.empty() || sch.empty()) throw ValidationError("give a preset or both data and schema");
  return {ParseTable(src, ParseTableFormat(fmt)), ResolveSchema(sch)};
}

py::dict ModelDict(const TrainedModel& m) {
  py::dict d;
  d["w"] = m.w;
  d["b"] = m.b;
  d["lambda"] = m.lambda;
  d["converged"] = m.converged;
  d["iterations"] = m.iterations;
  d["grad_norm"] = m.grad_norm;
  return d;
}

TrainedModel ModelFrom(const std::vector<double>& w, double b) {
  TrainedModel m;
  m.w = w;
  m.b = b;
  return m;
}

std::vector<SubgroupAuditEntry> Entries(const std::vector<double>& scores,
                                        const std::vector<std::size_t>& sizes) {
  if (scores.size() != sizes.size()) throw ValidationError("scores and sizes differ in length");
  std::vector<SubgroupAuditEntry> entries(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    entries[i].id = i + 1;
    entries[i].label = std::to_string(i + 1);
    entries[i].size = sizes[i];
    entries[i].feasible = true;
    entries[i].complexity_score = scores[i];
  }
  RankSubgroups(entries);
  return entries;
}

}  // namespace

PYBIND11_MODULE(_pacfair, m) {
  m.doc() = "Native core of pacfair.";

  static py::exception<Error> error(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());
  py::register_exception<AuditAbort>(m, "AuditAbort", error.ptr());

  m.def(
      "audit",
      [](std::optional<std::string> preset, std::optional<std::string> data,
         std::optional<std::string> format, std::optional<std::string> schema,
         std::optional<std::uint64_t> seed, std::size_t n_draws, std::size_t folds,
         std::vector<double> lambda_grid, bool include_overall, unsigned threads) {
        if (!seed && !preset) throw ValidationError("seed is required without a preset");
        const Loaded in = Load(preset, data, format, schema);
        AuditConfig cfg;
        cfg.seed = seed.value_or(7);
        cfg.n_draws = n_draws;
        cfg.train.folds = folds;
        if (!lambda_grid.empty()) cfg.train.lambda_grid = lambda_grid;
        cfg.include_overall = include_overall;
        cfg.threads = threads;
        AuditReport report;
        {
          py::gil_scoped_release release;
          report = RunAudit(in.table, in.schema, cfg);
        }
        return py::make_tuple(ReportToJson(report), ReportToMarkdown(report));
      },
      py::arg("preset") = py::none(), py::arg("data") = py::none(), py::arg("format") = py::none(),
      py::arg("schema") = py::none(), py::arg("seed") = py::none(), py::arg("n_draws") = 1000,
      py::arg("folds") = 10, py::arg("lambda_grid") = std::vector<double>{},
      py::arg("include_overall") = true, py::arg("threads") = 0,
      "Runs the subgroup audit; returns (report_json, report_markdown).");

  m.def(
      "encode",
      [](std::optional<std::string> preset, std::optional<std::string> data,
         std::optional<std::string> format, std::optional<std::string> schema) {
        const Loaded in = Load(preset, data, format, schema);
        const EncodedDataset ds = Encode(in.table, in.schema);
        py::list groups;
        for (const auto& g : ExtractSubgroups(ds, in.table, in.schema)) {
          groups.append(py::make_tuple(g.label, g.indices));
        }
        py::dict out;
        out["x"] = FromMatrix(ds.x);
        out["y"] = ds.y;
        out["feature_names"] = ds.feature_names;
        out["non_sensitive_mask"] = ds.non_sensitive_mask;
        out["subgroups"] = groups;
        out["warnings"] = ds.warnings;
        return out;
      },
      py::arg("preset") = py::none(), py::arg("data") = py::none(), py::arg("format") = py::none(),
      py::arg("schema") = py::none());

  m.def(
      "train_logistic",
      [](const Array& x, const std::vector<int>& y, double lam, double tol, std::size_t max_iters,
         bool fit_intercept) {
        TrainConfig cfg;
        cfg.tol = tol;
        cfg.max_iters = max_iters;
        cfg.fit_intercept = fit_intercept;
        return ModelDict(TrainLogistic(ToMatrix(x), y, lam, cfg));
      },
      py::arg("x"), py::arg("y"), py::arg("lam"), py::arg("tol") = 1e-8,
      py::arg("max_iters") = 10000, py::arg("fit_intercept") = true);

  m.def(
      "cross_validate",
      [](const Array& x, const std::vector<int>& y, std::vector<double> lambda_grid,
         std::size_t folds, std::uint64_t seed) {
        TrainConfig cfg;
        if (!lambda_grid.empty()) cfg.lambda_grid = lambda_grid;
        cfg.folds = folds;
        cfg.seed = seed;
        const CvResult cv = CrossValidate(ToMatrix(x), y, cfg);
        py::dict out;
        out["lambda_star"] = cv.lambda_star;
        out["lambdas"] = cv.lambdas;
        out["mean_loss"] = cv.mean_loss;
        out["fold_loss"] = cv.fold_loss;
        return out;
      },
      py::arg("x"), py::arg("y"), py::arg("lambda_grid") = std::vector<double>{},
      py::arg("folds") = 10, py::arg("seed") = 0);

  m.def(
      "predict_scores",
      [](const std::vector<double>& w, double b, const Array& x) {
        return PredictScores(ModelFrom(w, b), ToMatrix(x));
      },
      py::arg("w"), py::arg("b"), py::arg("x"));

  m.def(
      "estimate_rademacher",
      [](const Array& x, double phi, std::size_t n_draws, std::uint64_t seed) {
        const RademacherResult r = EstimateRademacher(ToMatrix(x), phi, n_draws, seed);
        py::dict out;
        out["estimate"] = r.estimate;
        out["std_error"] = r.std_error;
        out["n_draws"] = r.n_draws;
        out["analytic_bound"] = r.analytic_bound;
        return out;
      },
      py::arg("x"), py::arg("phi"), py::arg("n_draws") = 1000, py::arg("seed") = 0);

  m.def(
      "pacf_sample_complexity",
      [](double r, double delta, double eps_alpha, double eps_gamma, double constant,
         const std::string& variant) {
        ComplexityBudget b{delta, eps_alpha, eps_gamma, constant};
        if (variant != "uniform" && variant != "erm") {
          throw ValidationError("variant must be 'uniform' or 'erm'");
        }
        return PacfSampleComplexity(
            r, b, variant == "erm" ? ComplexityVariant::kErm : ComplexityVariant::kUniform);
      },
      py::arg("r"), py::arg("delta") = 0.05, py::arg("eps_alpha") = 0.1,
      py::arg("eps_gamma") = 0.1, py::arg("constant") = 1.0, py::arg("variant") = "uniform");

  m.def(
      "collaborative_bounds",
      [](std::size_t d, std::size_t k, double epsilon, double delta) {
        const CollaborativeBounds cb = ComputeCollaborativeBounds(d, k, epsilon, delta);
        py::dict out;
        out["centralized"] = cb.centralized;
        out["personalized"] = cb.personalized;
        out["uniform_lower"] = cb.uniform_lower;
        out["warnings"] = cb.warnings;
        return out;
      },
      py::arg("d"), py::arg("k"), py::arg("epsilon") = 0.1, py::arg("delta") = 0.05);

  m.def(
      "metric_fairness",
      [](const std::vector<double>& scores, const Array& x, const std::vector<bool>& mask,
         double gamma) {
        const FairnessEstimate e =
            EmpiricalMetricFairness(scores, ToMatrix(x), BuildMetric(mask), gamma);
        py::dict out;
        out["alpha_hat"] = e.alpha_hat;
        out["pairs_evaluated"] = e.pairs_evaluated;
        out["exhaustive"] = e.exhaustive;
        return out;
      },
      py::arg("scores"), py::arg("x"), py::arg("non_sensitive_mask"), py::arg("gamma"));

  m.def(
      "min_gamma_for_alpha",
      [](const std::vector<double>& scores, const Array& x, const std::vector<bool>& mask,
         double alpha_target) {
        return MinGammaForAlpha(scores, ToMatrix(x), BuildMetric(mask), alpha_target);
      },
      py::arg("scores"), py::arg("x"), py::arg("non_sensitive_mask"), py::arg("alpha_target"));

  m.def(
      "rank_inversions",
      [](const std::vector<double>& complexity_scores, const std::vector<std::size_t>& sizes) {
        const auto entries = Entries(complexity_scores, sizes);
        const InversionSummary s = FindInversions(entries);
        py::list recs;
        for (const auto& r : RecommendCollection(entries)) {
          recs.append(py::make_tuple(r.id, r.additional));
        }
        return py::make_tuple(s.inversions, s.kendall_tau, recs);
      },
      py::arg("complexity_scores"), py::arg("sizes"),
      "Returns (inversions, kendall_tau, [(id, additional samples)]); ids are 1-based.");
}
