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

// Rademacher complexity of norm-bounded linear predictors and the sample
// complexity formulas built on it.
//
// For H = {x -> w.x : ||w||_2 <= phi} the supremum inside the empirical
// Rademacher complexity has a closed form,
//
//   sup_w (1/m) sum_i sigma_i (w.x_i) = (phi/m) || sum_i sigma_i x_i ||_2,
//
// so each Monte-Carlo draw costs one pass over the sample. The classical
// bound R_m(H) <= R phi / sqrt(m), R = max_i ||x_i||_2, is reported next to
// the estimate.
//
// All sample-complexity values below are big-O expressions evaluated with a
// leading constant C (default 1). Only their relative order across
// subgroups is meaningful.

#ifndef PACFAIR_COMPLEXITY_HPP_
#define PACFAIR_COMPLEXITY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pacfair/logistic.hpp"
#include "pacfair/matrix.hpp"

namespace pacfair {

struct RademacherResult {
  double estimate = 0.0;   // Monte-Carlo mean of the per-draw supremum
  double std_error = 0.0;  // sample std / sqrt(n_draws)
  std::size_t n_draws = 0;
  double analytic_bound = 0.0;  // R phi / sqrt(m)
  double r_coefficient = 0.0;   // estimate * sqrt(m)
};

// Draw t uses an mt19937_64 seeded with DeriveSeed(seed, t), so the result
// does not depend on `threads`. Scaling phi by a power of two scales
// estimate and std_error by exactly that factor. Throws ValidationError on
// an empty matrix, phi < 0 or n_draws == 0.
RademacherResult EstimateRademacher(const Matrix& x, double phi, std::size_t n_draws,
                                    std::uint64_t seed, unsigned threads = 1);

// R phi / sqrt(m).
double AnalyticRademacherBound(const NormStats& stats);

struct ComplexityBudget {
  double delta = 0.05;
  double eps_alpha = 0.1;
  double eps_gamma = 0.1;
  double constant = 1.0;

  // delta, eps_alpha, eps_gamma strictly inside (0, 1); constant > 0.
  void Validate() const;
};

enum class ComplexityVariant {
  kUniform,  // C r^2 ln(1/delta) / (eps_alpha^2 eps_gamma^2)
  kErm,      // C r^2 ln(1/delta) / min(eps_alpha, eps_gamma)^2
};

// Sample complexity score for fairness generalization with Rademacher
// coefficient r (R_m(H) = r / sqrt(m)).
double PacfSampleComplexity(double r, const ComplexityBudget& budget, ComplexityVariant variant);

// Same with r = R phi from the norm statistics.
double PacfSampleComplexity(const NormStats& stats, const ComplexityBudget& budget,
                            ComplexityVariant variant);

// Accuracy bounds for learning k subgroup distributions with a class of VC
// dimension d.
struct CollaborativeBounds {
  std::size_t d = 0;
  std::size_t k = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  // (ln^2 k / eps) ((d + k) ln(1/eps) + k ln(1/delta))
  double centralized = 0.0;
  // centralized / ln k; absent for k == 1
  std::optional<double> personalized;
  // d k (1 - delta) / (4 eps)
  double uniform_lower = 0.0;
  std::vector<std::string> warnings;
};

// Throws ValidationError for d == 0, k == 0 or eps/delta outside (0, 1).
// Values outside (0, 0.1], where the uniform lower bound is stated, add a
// warning instead.
CollaborativeBounds ComputeCollaborativeBounds(std::size_t d, std::size_t k, double epsilon,
                                               double delta);

}  // namespace pacfair

#endif  // PACFAIR_COMPLEXITY_HPP_
