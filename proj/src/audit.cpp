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

#include "pacfair/audit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pacfair/error.hpp"
#include "pacfair/random.hpp"

namespace pacfair {
namespace {

std::vector<std::size_t> FeasibleIndices(const std::vector<SubgroupAuditEntry>& entries) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].feasible) out.push_back(i);
  }
  return out;
}

// Seed streams per entry: 3 * id + {0: folds, 1: Rademacher, 2: pair sampling}.
std::uint64_t StreamSeed(std::uint64_t seed, std::size_t id, std::size_t stream) {
  return DeriveSeed(seed, 3 * static_cast<std::uint64_t>(id) + stream);
}

void EvaluateSubgroup(const Matrix& x, const std::vector<int>& y, const SimilarityMetric& metric,
                      const AuditConfig& config, SubgroupAuditEntry& entry) {
  TrainConfig train = config.train;
  train.seed = StreamSeed(config.seed, entry.id, 0);

  const std::size_t m = x.rows();
  const std::size_t negatives = m - entry.positives;
  std::size_t folds = std::min(train.folds, m);
  if (train.stratified) folds = std::min({folds, entry.positives, negatives});
  if (folds < 2) folds = 2;
  if (folds != train.folds) {
    entry.warnings.push_back("cross-validation folds reduced from " + std::to_string(train.folds) +
                             " to " + std::to_string(folds) + " (" + std::to_string(entry.positives) +
                             " positive, " + std::to_string(negatives) + " negative rows)");
  }
  train.folds = folds;
  entry.folds_used = folds;

  const CvResult cv = CrossValidate(x, y, train, config.threads);
  TrainedModel model = TrainLogistic(x, y, cv.lambda_star, train);
  const auto star = static_cast<std::size_t>(
      std::find(cv.lambdas.begin(), cv.lambdas.end(), cv.lambda_star) - cv.lambdas.begin());
  model.cv_log_loss = cv.mean_loss[star];
  entry.lambda_star = cv.lambda_star;
  entry.cv_log_loss = model.cv_log_loss;
  entry.converged = model.converged;
  entry.iterations = model.iterations;
  if (!model.converged) {
    entry.warnings.push_back("final fit stopped at the iteration cap with gradient norm " +
                             std::to_string(model.grad_norm));
  }

  entry.norm_stats = ComputeNormStats(x, model);
  if (config.phi_mode == PhiMode::kFoldMax) {
    for (double n : cv.fold_weight_norm[star]) entry.norm_stats.phi = std::max(entry.norm_stats.phi, n);
  }

  entry.rademacher = EstimateRademacher(x, entry.norm_stats.phi, config.n_draws,
                                        StreamSeed(config.seed, entry.id, 1), config.threads);
  const double r = config.r_source == RSource::kAnalytic
                       ? entry.norm_stats.r * entry.norm_stats.phi
                       : entry.rademacher.r_coefficient;
  entry.complexity_score = PacfSampleComplexity(r, config.budget, ComplexityVariant::kUniform);
  entry.complexity_score_erm = PacfSampleComplexity(r, config.budget, ComplexityVariant::kErm);

  const std::vector<double> scores = PredictScores(model, x);
  FairnessOptions fopts = config.fairness;
  fopts.seed = StreamSeed(config.seed, entry.id, 2);
  const PairTable pairs(scores, x, metric, fopts);
  for (double gamma : config.gamma_grid) {
    entry.fairness.push_back(EmpiricalMetricFairness(pairs, gamma, fopts.worst_pairs));
  }
  entry.min_gamma = MinGammaForAlpha(pairs, config.alpha_target);
}

// Marks the entry infeasible when it cannot be audited; returns feasibility.
bool CheckFeasible(SubgroupAuditEntry& entry) {
  if (entry.size == 0) {
    entry.note =
        "empty subgroup: no samples exist for this intersection, so no model of any complexity "
        "can be shown fair with respect to it; collect data or use an individual-fairness "
        "criterion";
    return false;
  }
  if (entry.positives == 0 || entry.positives == entry.size) {
    entry.note = "single-label subgroup: every row has the same target value (" +
                 std::to_string(entry.size) + " rows); no classifier can be fit or compared";
    return false;
  }
  if (entry.size < 2) {
    entry.note = "subgroup has a single row";
    return false;
  }
  return true;
}

}  // namespace

void AuditConfig::Validate() const {
  train.Validate();
  budget.Validate();
  if (!(pac_epsilon > 0.0 && pac_epsilon < 1.0)) throw ValidationError("pac epsilon must be in (0, 1)");
  if (!(pac_delta > 0.0 && pac_delta < 1.0)) throw ValidationError("pac delta must be in (0, 1)");
  if (n_draws == 0) throw ValidationError("n_draws must be >= 1");
  for (double g : gamma_grid) {
    if (!(g >= 0.0)) throw ValidationError("gamma grid entries must be >= 0");
  }
  if (!(alpha_target >= 0.0 && alpha_target <= 1.0)) {
    throw ValidationError("alpha target must be in [0, 1]");
  }
}

void RankSubgroups(std::vector<SubgroupAuditEntry>& entries) {
  const auto feasible = FeasibleIndices(entries);
  if (feasible.empty()) throw ValidationError("no feasible subgroup to rank");
  for (auto& e : entries) e.complexity_rank = e.size_rank = 0;

  auto by_complexity = feasible;
  std::stable_sort(by_complexity.begin(), by_complexity.end(), [&](std::size_t a, std::size_t b) {
    return entries[a].complexity_score < entries[b].complexity_score;
  });
  auto by_size = feasible;
  std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
    return entries[a].size < entries[b].size;
  });
  for (std::size_t r = 0; r < feasible.size(); ++r) {
    entries[by_complexity[r]].complexity_rank = r + 1;
    entries[by_size[r]].size_rank = r + 1;
  }
}

InversionSummary FindInversions(const std::vector<SubgroupAuditEntry>& entries) {
  const auto feasible = FeasibleIndices(entries);
  InversionSummary out;
  long concordant = 0, discordant = 0;
  for (std::size_t a = 0; a < feasible.size(); ++a) {
    for (std::size_t b = a + 1; b < feasible.size(); ++b) {
      const auto& ea = entries[feasible[a]];
      const auto& eb = entries[feasible[b]];
      const long dc = static_cast<long>(ea.complexity_rank) - static_cast<long>(eb.complexity_rank);
      const long ds = static_cast<long>(ea.size_rank) - static_cast<long>(eb.size_rank);
      if (dc * ds < 0) {
        ++discordant;
        out.inversions.emplace_back(std::min(ea.id, eb.id), std::max(ea.id, eb.id));
      } else if (dc * ds > 0) {
        ++concordant;
      }
    }
  }
  std::sort(out.inversions.begin(), out.inversions.end());
  const double k = static_cast<double>(feasible.size());
  out.kendall_tau = feasible.size() < 2
                        ? 1.0
                        : static_cast<double>(concordant - discordant) / (k * (k - 1.0) / 2.0);
  return out;
}

std::vector<Recommendation> RecommendCollection(const std::vector<SubgroupAuditEntry>& entries) {
  auto order = FeasibleIndices(entries);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return entries[a].complexity_rank < entries[b].complexity_rank;
  });
  std::vector<Recommendation> out;
  std::size_t prev_target = 0;
  std::size_t prev_pos = 0;
  bool first = true;
  for (std::size_t idx : order) {
    const auto& e = entries[idx];
    std::size_t target = e.size;
    if (!first) {
      // Equal sizes rank by entry order, so a tie is enough when the
      // predecessor also comes first in that order.
      const std::size_t needed = prev_target + (prev_pos < idx ? 0 : 1);
      target = std::max(target, needed);
    }
    if (target > e.size) out.push_back({e.id, e.label, e.size, target, target - e.size});
    prev_target = target;
    prev_pos = idx;
    first = false;
  }
  std::sort(out.begin(), out.end(),
            [](const Recommendation& a, const Recommendation& b) { return a.id < b.id; });
  return out;
}

AuditReport RunAudit(const RawTable& table, const Schema& schema, const AuditConfig& config) {
  schema.Validate(/*require_sensitive=*/true);
  config.Validate();

  AuditReport report;
  report.dataset = table.source;
  report.schema_id = schema.id;
  report.config = config;

  const EncodedDataset ds = Encode(table, schema);
  report.m = ds.m();
  report.d = ds.d();
  report.feature_names = ds.feature_names;
  report.warnings = ds.warnings;
  const SimilarityMetric metric = BuildMetric(ds);
  const std::vector<Subgroup> groups = ExtractSubgroups(ds, table, schema);

  for (std::size_t g = 0; g < groups.size(); ++g) {
    SubgroupAuditEntry entry;
    entry.id = g + 1;
    entry.key = groups[g].key;
    entry.label = groups[g].label;
    entry.size = groups[g].size();
    for (auto i : groups[g].indices) entry.positives += static_cast<std::size_t>(ds.y[i]);
    entry.feasible = CheckFeasible(entry);
    if (entry.feasible) {
      const Matrix x = ds.x.SelectRows(groups[g].indices);
      std::vector<int> y;
      y.reserve(groups[g].indices.size());
      for (auto i : groups[g].indices) y.push_back(ds.y[i]);
      EvaluateSubgroup(x, y, metric, config, entry);
      // Report pair rows as dataset rows, not subgroup-local positions.
      for (auto& f : entry.fairness) {
        for (auto& p : f.violating_pairs) {
          p.i = groups[g].indices[p.i];
          p.j = groups[g].indices[p.j];
        }
      }
    } else {
      report.warnings.push_back("subgroup " + std::to_string(entry.id) + " (" + entry.label +
                                ") is infeasible: " + entry.note);
    }
    report.entries.push_back(std::move(entry));
  }

  const auto feasible = FeasibleIndices(report.entries);
  report.k = feasible.size();
  if (report.k < 2) {
    throw AuditAbort("audit needs at least two feasible subgroups, found " +
                     std::to_string(report.k) + " among " + std::to_string(groups.size()));
  }

  if (config.include_overall) {
    SubgroupAuditEntry overall;
    overall.id = 0;
    overall.label = "Overall";
    overall.size = ds.m();
    for (int v : ds.y) overall.positives += static_cast<std::size_t>(v);
    overall.feasible = CheckFeasible(overall);
    if (overall.feasible) EvaluateSubgroup(ds.x, ds.y, metric, config, overall);
    report.overall = std::move(overall);
  }

  RankSubgroups(report.entries);
  report.inversions = FindInversions(report.entries);
  report.recommendations = RecommendCollection(report.entries);
  report.collaborative = ComputeCollaborativeBounds(report.d, report.k, config.pac_epsilon,
                                                    config.pac_delta);
  return report;
}

}  // namespace pacfair
