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

#include "pacfair/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pacfair/error.hpp"
#include "pacfair/random.hpp"

namespace pacfair {
namespace {

// Index of the first exhaustive pair whose first row is i.
std::size_t RowOffset(std::size_t i, std::size_t m) { return i * (2 * m - i - 1) / 2; }

std::size_t AllowedViolations(double alpha_target, std::size_t pairs) {
  const double p = static_cast<double>(pairs);
  auto c = static_cast<std::size_t>(std::floor(alpha_target * p));
  c = std::min(c, pairs);
  while (c > 0 && static_cast<double>(c) / p > alpha_target) --c;
  while (c < pairs && static_cast<double>(c + 1) / p <= alpha_target) ++c;
  return c;
}

}  // namespace

double SimilarityMetric::Distance(std::span<const double> a, std::span<const double> b) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!mask[k]) continue;
    const double diff = a[k] - b[k];
    acc += diff * diff;
  }
  return std::sqrt(acc) / scale;
}

SimilarityMetric BuildMetric(const std::vector<bool>& non_sensitive_mask) {
  const auto kept = static_cast<std::size_t>(
      std::count(non_sensitive_mask.begin(), non_sensitive_mask.end(), true));
  if (kept == 0) {
    throw ValidationError("every feature is sensitive; the similarity metric would be empty");
  }
  return SimilarityMetric{non_sensitive_mask, std::sqrt(static_cast<double>(kept))};
}

SimilarityMetric BuildMetric(const EncodedDataset& ds) { return BuildMetric(ds.non_sensitive_mask); }

PairTable::PairTable(std::span<const double> scores, const Matrix& x,
                     const SimilarityMetric& metric, const FairnessOptions& options)
    : rows_(x.rows()) {
  const std::size_t m = x.rows();
  if (scores.size() != m) {
    throw ValidationError("score count " + std::to_string(scores.size()) + " does not match " +
                          std::to_string(m) + " rows");
  }
  if (m < 2) throw ValidationError("metric fairness needs at least two rows");
  if (metric.mask.size() != x.cols()) {
    throw ValidationError("metric mask length does not match the feature dimension");
  }
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("scores must lie in [0, 1]");
  }

  exhaustive_ = m <= options.exhaustive_cap;
  if (exhaustive_) {
    const std::size_t total = m * (m - 1) / 2;
    gap_.reserve(total);
    distance_.reserve(total);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        gap_.push_back(std::abs(scores[i] - scores[j]));
        distance_.push_back(metric.Distance(x.row(i), x.row(j)));
      }
    }
    return;
  }

  const std::size_t cap = std::max<std::size_t>(options.exhaustive_cap, 2);
  const std::size_t n = options.sampled_pairs ? options.sampled_pairs : cap * (cap - 1) / 2;
  Rng rng(options.seed);
  gap_.reserve(n);
  distance_.reserve(n);
  first_.reserve(n);
  second_.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    auto i = static_cast<std::size_t>(UniformIndex(rng, m));
    auto j = static_cast<std::size_t>(UniformIndex(rng, m - 1));
    if (j >= i) ++j;
    if (j < i) std::swap(i, j);
    first_.push_back(i);
    second_.push_back(j);
    gap_.push_back(std::abs(scores[i] - scores[j]));
    distance_.push_back(metric.Distance(x.row(i), x.row(j)));
  }
}

PairRecord PairTable::Pair(std::size_t p) const {
  if (!exhaustive_) return {first_[p], second_[p], gap_[p], distance_[p]};
  // Largest i in [0, m-2] with RowOffset(i) <= p.
  std::size_t lo = 0, hi = rows_ - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (RowOffset(mid, rows_) <= p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const std::size_t i = lo;
  const std::size_t j = i + 1 + (p - RowOffset(i, rows_));
  return {i, j, gap_[p], distance_[p]};
}

FairnessEstimate EmpiricalMetricFairness(const PairTable& pairs, double gamma,
                                         std::size_t worst_pairs) {
  if (!(gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
  FairnessEstimate out;
  out.gamma = gamma;
  out.pairs_evaluated = pairs.size();
  out.exhaustive = pairs.exhaustive();
  std::vector<std::size_t> violators;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (pairs.Violates(p, gamma)) violators.push_back(p);
  }
  out.alpha_hat = pairs.size() ? static_cast<double>(violators.size()) /
                                     static_cast<double>(pairs.size())
                               : 0.0;
  const std::size_t keep = std::min(worst_pairs, violators.size());
  auto excess = [&](std::size_t p) {
    auto rec = pairs.Pair(p);
    return rec.gap - rec.distance;
  };
  std::partial_sort(violators.begin(), violators.begin() + static_cast<std::ptrdiff_t>(keep),
                    violators.end(), [&](std::size_t a, std::size_t b) {
                      const double ea = excess(a), eb = excess(b);
                      return ea != eb ? ea > eb : a < b;
                    });
  for (std::size_t k = 0; k < keep; ++k) out.violating_pairs.push_back(pairs.Pair(violators[k]));
  return out;
}

FairnessEstimate EmpiricalMetricFairness(std::span<const double> scores, const Matrix& x,
                                         const SimilarityMetric& metric, double gamma,
                                         const FairnessOptions& options) {
  if (!(gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
  return EmpiricalMetricFairness(PairTable(scores, x, metric, options), gamma,
                                 options.worst_pairs);
}

double MinGammaForAlpha(const PairTable& pairs, double alpha_target) {
  if (!(alpha_target >= 0.0 && alpha_target <= 1.0)) {
    throw ValidationError("alpha target must be in [0, 1]");
  }
  const std::size_t total = pairs.size();
  const std::size_t allowed = AllowedViolations(alpha_target, total);
  if (allowed >= total) return 0.0;

  std::vector<double> excess(total);
  for (std::size_t p = 0; p < total; ++p) {
    auto rec = pairs.Pair(p);
    excess[p] = rec.gap - rec.distance;
  }
  // (allowed + 1)-th largest excess.
  std::nth_element(excess.begin(), excess.begin() + static_cast<std::ptrdiff_t>(allowed),
                   excess.end(), std::greater<>());
  double gamma = std::max(0.0, excess[allowed]);

  // gap - distance and distance + gamma round differently; step up until the
  // violation predicate itself agrees.
  auto count = [&](double g) {
    std::size_t c = 0;
    for (std::size_t p = 0; p < total; ++p) c += pairs.Violates(p, g) ? 1 : 0;
    return c;
  };
  while (count(gamma) > allowed) gamma = std::nextafter(gamma, std::numeric_limits<double>::infinity());
  return gamma;
}

double MinGammaForAlpha(std::span<const double> scores, const Matrix& x,
                        const SimilarityMetric& metric, double alpha_target,
                        const FairnessOptions& options) {
  return MinGammaForAlpha(PairTable(scores, x, metric, options), alpha_target);
}

}  // namespace pacfair
