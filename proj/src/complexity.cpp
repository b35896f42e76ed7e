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

#include "pacfair/complexity.hpp"

#include <algorithm>
#include <cmath>

#include "pacfair/error.hpp"
#include "pacfair/parallel.hpp"
#include "pacfair/random.hpp"

namespace pacfair {
namespace {

bool InUnitInterval(double v) { return v > 0.0 && v < 1.0; }

}  // namespace

RademacherResult EstimateRademacher(const Matrix& x, double phi, std::size_t n_draws,
                                    std::uint64_t seed, unsigned threads) {
  if (x.empty()) throw ValidationError("Rademacher estimate needs at least one row");
  if (!(phi >= 0.0) || !std::isfinite(phi)) throw ValidationError("phi must be finite and >= 0");
  if (n_draws == 0) throw ValidationError("n_draws must be >= 1");

  const SparseRows rows(x);
  const std::size_t m = x.rows();
  const double inv_m = 1.0 / static_cast<double>(m);

  // ||sum_i sigma_i x_i|| / m per draw; phi is applied after averaging.
  std::vector<double> unit(n_draws);
  ParallelFor(n_draws, threads, [&](std::size_t t) {
    Rng rng(DeriveSeed(seed, t));
    std::vector<double> acc(x.cols(), 0.0);
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i % 64 == 0) bits = rng();
      const double sign = (bits & 1) ? 1.0 : -1.0;
      bits >>= 1;
      rows.Axpy(i, sign, acc);
    }
    unit[t] = Norm2(acc) * inv_m;
  });

  double mean = 0.0;
  for (double v : unit) mean += v;
  mean /= static_cast<double>(n_draws);
  double var = 0.0;
  if (n_draws > 1) {
    for (double v : unit) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n_draws - 1);
  }
  const double unit_se = std::sqrt(var / static_cast<double>(n_draws));
  const double sqrt_m = std::sqrt(static_cast<double>(m));

  RademacherResult out;
  out.estimate = phi * mean;
  out.std_error = phi * unit_se;
  out.n_draws = n_draws;
  out.analytic_bound = MaxRowNorm(x) * phi / sqrt_m;
  out.r_coefficient = out.estimate * sqrt_m;
  return out;
}

double AnalyticRademacherBound(const NormStats& stats) {
  if (stats.m == 0) throw ValidationError("analytic bound needs m >= 1");
  return stats.r * stats.phi / std::sqrt(static_cast<double>(stats.m));
}

void ComplexityBudget::Validate() const {
  if (!InUnitInterval(delta)) throw ValidationError("delta must be in (0, 1)");
  if (!InUnitInterval(eps_alpha)) throw ValidationError("eps_alpha must be in (0, 1)");
  if (!InUnitInterval(eps_gamma)) throw ValidationError("eps_gamma must be in (0, 1)");
  if (!(constant > 0.0) || !std::isfinite(constant)) {
    throw ValidationError("leading constant must be finite and > 0");
  }
}

double PacfSampleComplexity(double r, const ComplexityBudget& budget, ComplexityVariant variant) {
  budget.Validate();
  if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("r must be finite and >= 0");
  const double numerator = budget.constant * r * r * std::log(1.0 / budget.delta);
  switch (variant) {
    case ComplexityVariant::kUniform:
      return numerator / (budget.eps_alpha * budget.eps_alpha * budget.eps_gamma * budget.eps_gamma);
    case ComplexityVariant::kErm: {
      const double e = std::min(budget.eps_alpha, budget.eps_gamma);
      return numerator / (e * e);
    }
  }
  return 0.0;
}

double PacfSampleComplexity(const NormStats& stats, const ComplexityBudget& budget,
                            ComplexityVariant variant) {
  return PacfSampleComplexity(stats.r * stats.phi, budget, variant);
}

CollaborativeBounds ComputeCollaborativeBounds(std::size_t d, std::size_t k, double epsilon,
                                               double delta) {
  if (d == 0) throw ValidationError("dimension d must be >= 1");
  if (k == 0) throw ValidationError("subgroup count k must be >= 1");
  if (!InUnitInterval(epsilon)) throw ValidationError("epsilon must be in (0, 1)");
  if (!InUnitInterval(delta)) throw ValidationError("delta must be in (0, 1)");

  CollaborativeBounds out;
  out.d = d;
  out.k = k;
  out.epsilon = epsilon;
  out.delta = delta;
  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);
  const double ln_k = std::log(kk);
  out.centralized = (ln_k * ln_k / epsilon) *
                    ((dd + kk) * std::log(1.0 / epsilon) + kk * std::log(1.0 / delta));
  if (k >= 2) out.personalized = out.centralized / ln_k;
  out.uniform_lower = dd * kk * (1.0 - delta) / (4.0 * epsilon);
  if (epsilon > 0.1 || delta > 0.1) {
    out.warnings.push_back(
        "uniform_lower is stated for epsilon, delta in (0, 0.1]; value outside that range");
  }
  return out;
}

}  // namespace pacfair
