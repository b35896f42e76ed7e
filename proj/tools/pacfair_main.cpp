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

// pacfair command-line driver.
//
//   pacfair audit      --preset adult|german [--seed N] [--out report.json] [--markdown report.md]
//   pacfair complexity [--R r --phi p --m m] [--d d --k k --eps e] [--delta ...]
//   pacfair fairness   --model model.json (--features enc.csv | data options) --gamma g
//   pacfair train      data options [--subgroup id] [--lambda l] --out model.json
//   pacfair encode     data options
//   pacfair subgroups  data options
//
// Exit codes: 0 success, 1 audit aborted, 2 usage or input error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pacfair/audit.hpp"
#include "pacfair/complexity.hpp"
#include "pacfair/encode.hpp"
#include "pacfair/error.hpp"
#include "pacfair/fairness.hpp"
#include "pacfair/logistic.hpp"
#include "pacfair/report.hpp"
#include "pacfair/schema.hpp"
#include "pacfair/table.hpp"

namespace {

using namespace pacfair;

constexpr int kExitOk = 0;
constexpr int kExitAbort = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kPresetSeed = 7;

struct DataOptions {
  std::string preset;
  std::string data;
  std::string format;
  std::string schema;

  void Add(CLI::App* cmd) {
    cmd->add_option("--preset", preset, "Builtin setup: adult or german")
        ->check(CLI::IsMember({"adult", "german"}));
    cmd->add_option("--data", data, "Dataset path, or builtin:adult / builtin:german");
    cmd->add_option("--format", format, "Table format: csv, uci-adult, uci-german")
        ->check(CLI::IsMember({"csv", "uci-adult", "uci-german"}));
    cmd->add_option("--schema", schema, "Schema JSON path, or builtin:adult / builtin:german");
  }

  std::pair<RawTable, Schema> Load() const {
    std::string src = data;
    std::string fmt = format;
    std::string sch = schema;
    if (!preset.empty()) {
      if (src.empty()) src = "builtin:" + preset;
      if (fmt.empty()) fmt = std::string(ToString(BuiltinFormat(preset)));
      if (sch.empty()) sch = "builtin:" + preset;
    }
    if (src.empty()) throw ValidationError("no dataset given (use --preset or --data)");
    if (sch.empty()) throw ValidationError("no schema given (use --preset or --schema)");
    if (fmt.empty()) fmt = "csv";
    Schema s = ResolveSchema(sch);
    RawTable t = ParseTable(src, ParseTableFormat(fmt));
    return {std::move(t), std::move(s)};
  }
};

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
  DataOptions data;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string markdown;
  bool quiet = false;
  AuditConfig config;
  std::string r_source = "analytic";
  std::string phi_mode = "final";
  bool no_overall = false;
};

void AddAudit(CLI::App& app, AuditArgs& a) {
  auto* cmd = app.add_subcommand("audit", "Run the subgroup sample-complexity audit");
  a.data.Add(cmd);
  cmd->add_option("--seed", a.seed, "Master seed (presets default to 7; required otherwise)");
  cmd->add_option("--out", a.out, "Write the JSON report here");
  cmd->add_option("--markdown", a.markdown, "Write the markdown report here");
  cmd->add_flag("--quiet", a.quiet, "Do not print the markdown report to stdout");
  cmd->add_option("--n-draws", a.config.n_draws, "Monte-Carlo Rademacher draws")->capture_default_str();
  cmd->add_option("--folds", a.config.train.folds, "Cross-validation folds")->capture_default_str();
  cmd->add_option("--lambda-grid", a.config.train.lambda_grid, "L2 penalties to cross-validate");
  cmd->add_option("--max-iters", a.config.train.max_iters, "Optimizer iteration cap")->capture_default_str();
  cmd->add_option("--tol", a.config.train.tol, "Gradient-norm tolerance")->capture_default_str();
  cmd->add_option("--delta", a.config.budget.delta, "Failure probability delta")->capture_default_str();
  cmd->add_option("--eps-alpha", a.config.budget.eps_alpha, "eps_alpha")->capture_default_str();
  cmd->add_option("--eps-gamma", a.config.budget.eps_gamma, "eps_gamma")->capture_default_str();
  cmd->add_option("--constant", a.config.budget.constant, "Leading constant C")->capture_default_str();
  cmd->add_option("--pac-epsilon", a.config.pac_epsilon, "Accuracy epsilon for the k-group bounds")
      ->capture_default_str();
  cmd->add_option("--pac-delta", a.config.pac_delta, "Accuracy delta for the k-group bounds")
      ->capture_default_str();
  cmd->add_option("--gamma-grid", a.config.gamma_grid, "Fairness slacks to evaluate");
  cmd->add_option("--alpha-target", a.config.alpha_target, "alpha for the minimal-gamma column")
      ->capture_default_str();
  cmd->add_option("--r-source", a.r_source, "analytic (R*phi) or monte_carlo")
      ->check(CLI::IsMember({"analytic", "monte_carlo"}))
      ->capture_default_str();
  cmd->add_option("--phi-mode", a.phi_mode, "final or fold_max")
      ->check(CLI::IsMember({"final", "fold_max"}))
      ->capture_default_str();
  cmd->add_option("--pair-cap", a.config.fairness.exhaustive_cap,
                  "Rows above which fairness pairs are sampled")
      ->capture_default_str();
  cmd->add_flag("--no-overall", a.no_overall, "Skip the whole-dataset row");
  cmd->add_option("--threads", a.config.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

int RunAuditCommand(AuditArgs& a) {
  if (!a.seed && a.data.preset.empty()) throw ValidationError("--seed is required without --preset");
  a.config.seed = a.seed.value_or(kPresetSeed);
  a.config.r_source = a.r_source == "analytic" ? RSource::kAnalytic : RSource::kMonteCarlo;
  a.config.phi_mode = a.phi_mode == "final" ? PhiMode::kFinalModel : PhiMode::kFoldMax;
  a.config.include_overall = !a.no_overall;
  auto [table, schema] = a.data.Load();
  const AuditReport report = RunAudit(table, schema, a.config);
  const std::string md = ReportToMarkdown(report);
  if (!a.out.empty()) WriteFile(a.out, ReportToJson(report));
  if (!a.markdown.empty()) WriteFile(a.markdown, md);
  if (!a.quiet) std::cout << md;
  return kExitOk;
}

// ----------------------------------------------------------- complexity

struct ComplexityArgs {
  std::optional<double> r, phi;
  std::optional<std::size_t> m, d, k;
  double eps = 0.1;
  ComplexityBudget budget;
};

void AddComplexity(CLI::App& app, ComplexityArgs& a) {
  auto* cmd = app.add_subcommand("complexity", "Evaluate the sample complexity formulas");
  cmd->add_option("--R", a.r, "max ||x||_2");
  cmd->add_option("--phi", a.phi, "||w||_2");
  cmd->add_option("--m", a.m, "Sample size, for R*phi/sqrt(m)");
  cmd->add_option("--d", a.d, "Hypothesis dimension (VC dimension)");
  cmd->add_option("--k", a.k, "Number of subgroups");
  cmd->add_option("--eps", a.eps, "Accuracy epsilon for the k-group bounds")->capture_default_str();
  cmd->add_option("--delta", a.budget.delta, "Failure probability delta")->capture_default_str();
  cmd->add_option("--eps-alpha", a.budget.eps_alpha, "eps_alpha")->capture_default_str();
  cmd->add_option("--eps-gamma", a.budget.eps_gamma, "eps_gamma")->capture_default_str();
  cmd->add_option("--constant", a.budget.constant, "Leading constant C")->capture_default_str();
}

int RunComplexityCommand(const ComplexityArgs& a) {
  a.budget.Validate();
  bool printed = false;
  if (a.r || a.phi) {
    if (!a.r || !a.phi) throw ValidationError("--R and --phi go together");
    const NormStats stats{*a.r, *a.phi, a.m.value_or(1)};
    if (a.m) {
      std::cout << "rademacher_bound: " << Num(AnalyticRademacherBound(stats)) << "\n";
    }
    std::cout << "pacf_uniform: "
              << Num(PacfSampleComplexity(stats, a.budget, ComplexityVariant::kUniform)) << "\n";
    std::cout << "pacf_erm: " << Num(PacfSampleComplexity(stats, a.budget, ComplexityVariant::kErm))
              << "\n";
    printed = true;
  }
  if (a.d || a.k) {
    if (!a.d || !a.k) throw ValidationError("--d and --k go together");
    const auto cb = ComputeCollaborativeBounds(*a.d, *a.k, a.eps, a.budget.delta);
    std::cout << "centralized: " << Num(cb.centralized) << "\n";
    std::cout << "personalized: " << (cb.personalized ? Num(*cb.personalized) : "n/a") << "\n";
    std::cout << "uniform_lower: " << Num(cb.uniform_lower) << "\n";
    for (const auto& w : cb.warnings) std::cerr << "warning: " << w << "\n";
    printed = true;
  }
  if (!printed) throw ValidationError("give --R/--phi and/or --d/--k");
  return kExitOk;
}

// ------------------------------------------------------------- fairness

struct FairnessArgs {
  std::string model;
  std::string features;
  std::vector<std::string> sensitive_cols;
  DataOptions data;
  double gamma = 0.0;
  std::optional<double> alpha_target;
  FairnessOptions options;
};

void AddFairness(CLI::App& app, FairnessArgs& a) {
  auto* cmd = app.add_subcommand("fairness", "Empirical (alpha, gamma) metric fairness of a model");
  cmd->add_option("--model", a.model, "Model JSON (from `pacfair train`)")->required();
  cmd->add_option("--features", a.features, "Encoded numeric CSV with a header row");
  cmd->add_option("--sensitive-cols", a.sensitive_cols,
                  "Columns of --features derived from sensitive attributes")
      ->delimiter(',');
  a.data.Add(cmd);
  cmd->add_option("--gamma", a.gamma, "Slack gamma")->capture_default_str();
  cmd->add_option("--alpha-target", a.alpha_target, "Also report the smallest gamma reaching this alpha");
  cmd->add_option("--pair-cap", a.options.exhaustive_cap, "Rows above which pairs are sampled")
      ->capture_default_str();
  cmd->add_option("--seed", a.options.seed, "Seed for pair sampling")->capture_default_str();
}

EncodedDataset LoadFeatures(const std::string& path, const std::vector<std::string>& sensitive) {
  RawTable t = ParseTable(path, TableFormat::kCsv);
  EncodedDataset ds;
  ds.x = Matrix(t.num_rows(), t.header.size());
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      const std::string& s = t.rows[r][c];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(path + ": row " + std::to_string(r + 1) + ", column '" + t.header[c] +
                         "' is not a number");
      }
      ds.x(r, c) = v;
    }
  }
  ds.feature_names = t.header;
  for (const auto& name : t.header) {
    ds.non_sensitive_mask.push_back(std::find(sensitive.begin(), sensitive.end(), name) ==
                                    sensitive.end());
  }
  for (const auto& name : sensitive) {
    if (!t.ColumnIndex(name)) throw ValidationError("sensitive column '" + name + "' not in " + path);
  }
  return ds;
}

int RunFairnessCommand(const FairnessArgs& a) {
  const TrainedModel model = ModelFromJson(ReadFile(a.model));
  EncodedDataset ds;
  if (!a.features.empty()) {
    ds = LoadFeatures(a.features, a.sensitive_cols);
  } else {
    auto [table, schema] = a.data.Load();
    ds = Encode(table, schema);
  }
  const SimilarityMetric metric = BuildMetric(ds);
  const auto scores = PredictScores(model, ds.x);
  const PairTable pairs(scores, ds.x, metric, a.options);
  const FairnessEstimate est = EmpiricalMetricFairness(pairs, a.gamma, a.options.worst_pairs);
  std::cout << "alpha_hat: " << Num(est.alpha_hat) << "\n";
  std::cout << "gamma: " << Num(est.gamma) << "\n";
  std::cout << "pairs_evaluated: " << est.pairs_evaluated << "\n";
  std::cout << "exhaustive: " << (est.exhaustive ? "true" : "false") << "\n";
  if (a.alpha_target) {
    std::cout << "min_gamma: " << Num(MinGammaForAlpha(pairs, *a.alpha_target)) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  DataOptions data;
  std::optional<std::size_t> subgroup;
  std::optional<double> lambda;
  std::string out;
  TrainConfig config;
};

void AddTrain(CLI::App& app, TrainArgs& a) {
  auto* cmd = app.add_subcommand("train", "Fit an L2 logistic regression and write a model file");
  a.data.Add(cmd);
  cmd->add_option("--subgroup", a.subgroup, "Fit only this subgroup id (1-based, see `subgroups`)");
  cmd->add_option("--lambda", a.lambda, "Fixed penalty; otherwise chosen by cross-validation");
  cmd->add_option("--folds", a.config.folds, "Cross-validation folds")->capture_default_str();
  cmd->add_option("--seed", a.config.seed, "Fold assignment seed")->capture_default_str();
  cmd->add_option("--out", a.out, "Model JSON path (stdout if omitted)");
}

int RunTrainCommand(TrainArgs& a) {
  auto [table, schema] = a.data.Load();
  const EncodedDataset ds = Encode(table, schema);
  std::vector<std::size_t> rows;
  if (a.subgroup) {
    const auto groups = ExtractSubgroups(ds, table, schema);
    if (*a.subgroup == 0 || *a.subgroup > groups.size()) {
      throw ValidationError("subgroup id out of range 1.." + std::to_string(groups.size()));
    }
    rows = groups[*a.subgroup - 1].indices;
  } else {
    for (std::size_t i = 0; i < ds.m(); ++i) rows.push_back(i);
  }
  const Matrix x = ds.x.SelectRows(rows);
  std::vector<int> y;
  for (auto i : rows) y.push_back(ds.y[i]);
  double lambda = 0.0;
  double cv_loss = 0.0;
  if (a.lambda) {
    lambda = *a.lambda;
  } else {
    const CvResult cv = CrossValidate(x, y, a.config);
    lambda = cv.lambda_star;
    for (std::size_t i = 0; i < cv.lambdas.size(); ++i) {
      if (cv.lambdas[i] == lambda) cv_loss = cv.mean_loss[i];
    }
  }
  TrainedModel model = TrainLogistic(x, y, lambda, a.config);
  model.cv_log_loss = cv_loss;
  const std::string json = ModelToJson(model, ds.feature_names);
  if (a.out.empty()) {
    std::cout << json;
  } else {
    WriteFile(a.out, json);
  }
  return kExitOk;
}

// ------------------------------------------------------ encode/subgroups

int RunEncodeCommand(const DataOptions& data) {
  auto [table, schema] = data.Load();
  const EncodedDataset ds = Encode(table, schema);
  std::size_t positives = 0;
  for (int v : ds.y) positives += static_cast<std::size_t>(v);
  std::cout << "rows: " << ds.m() << "\n";
  std::cout << "d: " << ds.d() << "\n";
  std::cout << "positives: " << positives << "\n";
  for (std::size_t j = 0; j < ds.d(); ++j) {
    std::cout << (ds.non_sensitive_mask[j] ? "  " : "* ") << ds.feature_names[j] << "\n";
  }
  for (const auto& w : ds.warnings) std::cerr << "warning: " << w << "\n";
  return kExitOk;
}

int RunSubgroupsCommand(const DataOptions& data) {
  auto [table, schema] = data.Load();
  const EncodedDataset ds = Encode(table, schema);
  const auto groups = ExtractSubgroups(ds, table, schema);
  std::size_t id = 0;
  for (const auto& g : groups) {
    std::cout << ++id << "\t" << g.label << "\t" << g.size() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pacfair: subgroup sample-complexity audits for metric-fair linear learning"};
  app.require_subcommand(1);

  AuditArgs audit;
  ComplexityArgs complexity;
  FairnessArgs fairness;
  TrainArgs train;
  DataOptions encode_data, subgroup_data;
  AddAudit(app, audit);
  AddComplexity(app, complexity);
  AddFairness(app, fairness);
  AddTrain(app, train);
  encode_data.Add(app.add_subcommand("encode", "Print the encoded feature layout"));
  subgroup_data.Add(app.add_subcommand("subgroups", "Print intersectional subgroup sizes"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("audit")) return RunAuditCommand(audit);
    if (app.got_subcommand("complexity")) return RunComplexityCommand(complexity);
    if (app.got_subcommand("fairness")) return RunFairnessCommand(fairness);
    if (app.got_subcommand("train")) return RunTrainCommand(train);
    if (app.got_subcommand("encode")) return RunEncodeCommand(encode_data);
    if (app.got_subcommand("subgroups")) return RunSubgroupsCommand(subgroup_data);
  } catch (const AuditAbort& e) {
    std::cerr << "audit aborted: " << e.what() << "\n";
    return kExitAbort;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
