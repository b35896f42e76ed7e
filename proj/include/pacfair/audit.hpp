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

// Subgroup sample-complexity audit.
//
// For every intersectional subgroup: fit an L2 logistic regression chosen by
// cross-validation, take R = max ||x|| and phi = ||w||, estimate the
// Rademacher complexity, and score the fairness sample complexity. Subgroups
// are then ranked by that score and by their actual size; every pair ranked
// differently is an inversion, and the report recommends the fewest
// additional samples that would remove all inversions.

#ifndef PACFAIR_AUDIT_HPP_
#define PACFAIR_AUDIT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pacfair/complexity.hpp"
#include "pacfair/encode.hpp"
#include "pacfair/fairness.hpp"
#include "pacfair/logistic.hpp"
#include "pacfair/schema.hpp"
#include "pacfair/table.hpp"

namespace pacfair {

// Which r feeds the sample complexity score.
enum class RSource {
  kAnalytic,    // r = R phi
  kMonteCarlo,  // r = Monte-Carlo estimate * sqrt(m)
};

// Which weight vector defines phi.
enum class PhiMode {
  kFinalModel,  // the model refit on the whole subgroup at lambda_star
  kFoldMax,     // max of that and every fold model at lambda_star
};

struct AuditConfig {
  TrainConfig train;  // train.seed is ignored; per-subgroup seeds derive from `seed`
  ComplexityBudget budget;
  double pac_epsilon = 0.1;
  double pac_delta = 0.05;
  std::size_t n_draws = 1000;
  std::uint64_t seed = 0;
  std::vector<double> gamma_grid = {0.0, 0.05, 0.1, 0.2};
  double alpha_target = 0.05;
  RSource r_source = RSource::kAnalytic;
  PhiMode phi_mode = PhiMode::kFinalModel;
  FairnessOptions fairness;
  bool include_overall = true;
  unsigned threads = 0;

  void Validate() const;
};

struct SubgroupAuditEntry {
  std::size_t id = 0;  // 1-based position in subgroup order; 0 for the overall row
  std::vector<std::pair<std::string, std::string>> key;
  std::string label;
  std::size_t size = 0;
  std::size_t positives = 0;
  bool feasible = false;
  std::string note;  // why an entry is infeasible

  std::size_t folds_used = 0;
  double lambda_star = 0.0;
  double cv_log_loss = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  NormStats norm_stats;
  RademacherResult rademacher;
  double complexity_score = 0.0;      // uniform variant
  double complexity_score_erm = 0.0;  // ERM variant
  std::size_t complexity_rank = 0;    // 1 = lowest complexity; 0 when infeasible
  std::size_t size_rank = 0;          // 1 = smallest; 0 when infeasible
  std::vector<FairnessEstimate> fairness;  // one per gamma in the grid
  double min_gamma = 0.0;                  // at alpha_target
  std::vector<std::string> warnings;
};

// Unordered pair of entry ids, first < second.
using Inversion = std::pair<std::size_t, std::size_t>;

struct InversionSummary {
  std::vector<Inversion> inversions;
  double kendall_tau = 1.0;
};

struct Recommendation {
  std::size_t id = 0;
  std::string label;
  std::size_t current_size = 0;
  std::size_t target_size = 0;
  std::size_t additional = 0;
};

struct AuditReport {
  std::string dataset;
  std::string schema_id;
  std::size_t m = 0;
  std::size_t d = 0;
  std::size_t k = 0;  // feasible subgroups
  std::vector<std::string> feature_names;
  std::vector<SubgroupAuditEntry> entries;
  std::optional<SubgroupAuditEntry> overall;
  InversionSummary inversions;
  std::vector<Recommendation> recommendations;
  CollaborativeBounds collaborative;
  AuditConfig config;
  std::vector<std::string> warnings;
};

// Fills complexity_rank (by complexity_score ascending) and size_rank (by
// size ascending) over feasible entries, breaking ties by entry order.
// Infeasible entries get rank 0. Throws ValidationError with no feasible
// entry.
void RankSubgroups(std::vector<SubgroupAuditEntry>& entries);

// Pairs of feasible entries whose complexity and size ranks disagree, and
// Kendall's tau between the two rankings.
InversionSummary FindInversions(const std::vector<SubgroupAuditEntry>& entries);

// Fewest added samples after which the size ranking (same tie-break)
// equals the complexity ranking. Walks entries in complexity order and
// raises each size to the smallest value that still ranks above its
// predecessor. Only entries that need samples are returned.
std::vector<Recommendation> RecommendCollection(const std::vector<SubgroupAuditEntry>& entries);

// Full pipeline. Deterministic given config.seed. Empty and single-label
// subgroups are kept in the report with feasible = false. Throws AuditAbort
// when fewer than two subgroups are feasible.
AuditReport RunAudit(const RawTable& table, const Schema& schema, const AuditConfig& config);

}  // namespace pacfair

#endif  // PACFAIR_AUDIT_HPP_
