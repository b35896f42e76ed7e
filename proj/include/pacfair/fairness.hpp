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

// Empirical (alpha, gamma) metric fairness: the fraction of unordered pairs
// of distinct rows whose score gap exceeds their similarity distance plus a
// slack gamma,
//
//   alpha_hat(gamma) = #{ i < j : |h(x_i) - h(x_j)| > d(x_i, x_j) + gamma } / #pairs.
//
// Self-pairs are excluded. Above a row cap the pairs are subsampled.

#ifndef PACFAIR_FAIRNESS_HPP_
#define PACFAIR_FAIRNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pacfair/encode.hpp"
#include "pacfair/matrix.hpp"

namespace pacfair {

// d(x, x') = || (x - x') restricted to mask ||_2 / scale. Coordinates derived
// from sensitive attributes are masked out, so rows differing only in those
// are at distance 0.
struct SimilarityMetric {
  std::vector<bool> mask;
  double scale = 1.0;

  double Distance(std::span<const double> a, std::span<const double> b) const;
};

// Scale is sqrt(#non-sensitive coordinates), which maps [0,1]-valued rows to
// distances in [0, 1]. Throws ValidationError if every coordinate is
// sensitive.
SimilarityMetric BuildMetric(const std::vector<bool>& non_sensitive_mask);
SimilarityMetric BuildMetric(const EncodedDataset& ds);

struct FairnessOptions {
  std::size_t exhaustive_cap = 2000;  // rows; above this pairs are sampled
  std::size_t sampled_pairs = 0;      // 0: as many as the cap would enumerate
  std::uint64_t seed = 0;
  std::size_t worst_pairs = 10;       // violating pairs kept for reporting
};

struct PairRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  double gap = 0.0;       // |h_i - h_j|
  double distance = 0.0;  // d(x_i, x_j)
};

// Score gaps and distances for the evaluated pairs.
class PairTable {
 public:
  PairTable(std::span<const double> scores, const Matrix& x, const SimilarityMetric& metric,
            const FairnessOptions& options = {});

  std::size_t size() const { return gap_.size(); }
  bool exhaustive() const { return exhaustive_; }
  PairRecord Pair(std::size_t p) const;
  bool Violates(std::size_t p, double gamma) const { return gap_[p] > distance_[p] + gamma; }

 private:
  std::size_t rows_ = 0;
  bool exhaustive_ = true;
  std::vector<double> gap_;
  std::vector<double> distance_;
  std::vector<std::size_t> first_, second_;  // only when sampled
};

struct FairnessEstimate {
  double alpha_hat = 0.0;
  double gamma = 0.0;
  std::size_t pairs_evaluated = 0;
  bool exhaustive = true;
  std::vector<PairRecord> violating_pairs;  // largest gap - distance first
};

// Throws ValidationError for gamma < 0, fewer than two rows, scores outside
// [0, 1], or a score/row count mismatch.
FairnessEstimate EmpiricalMetricFairness(std::span<const double> scores, const Matrix& x,
                                         const SimilarityMetric& metric, double gamma,
                                         const FairnessOptions& options = {});
FairnessEstimate EmpiricalMetricFairness(const PairTable& pairs, double gamma,
                                         std::size_t worst_pairs = 10);

// Smallest gamma >= 0 with alpha_hat(gamma) <= alpha_target: an order
// statistic of the pair excesses gap - distance.
double MinGammaForAlpha(std::span<const double> scores, const Matrix& x,
                        const SimilarityMetric& metric, double alpha_target,
                        const FairnessOptions& options = {});
double MinGammaForAlpha(const PairTable& pairs, double alpha_target);

}  // namespace pacfair

#endif  // PACFAIR_FAIRNESS_HPP_
