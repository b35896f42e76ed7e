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


#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pacfair/complexity.hpp"
#include "pacfair/error.hpp"
#include "test_util.hpp"

using namespace pacfair;
using pacfair::testing::RandomMatrix;

TEST_SUITE("complexity") {

TEST_CASE("single point is deterministic") {
  const RademacherResult r = EstimateRademacher(Matrix::FromRows({{0.0, 2.0}}), 3.0, 50, 1);
  CHECK(r.estimate == 6.0);
  CHECK(r.std_error == 0.0);
  CHECK(r.analytic_bound == 6.0);
}

TEST_CASE("all-zero sample") {
  const RademacherResult r = EstimateRademacher(Matrix(7, 3), 2.5, 100, 1);
  CHECK(r.estimate == 0.0);
  CHECK(r.std_error == 0.0);
}

TEST_CASE("three points against exhaustive enumeration") {
  const Matrix x = Matrix::FromRows({{1.0, 0.0}, {0.5, 0.5}, {-0.2, 0.9}});
  const double exact = oracle::ExactRademacher(x, 1.0);
  const RademacherResult r = EstimateRademacher(x, 1.0, 4000, 99);
  CHECK(std::abs(r.estimate - exact) <= 3.0 * r.std_error);
}

TEST_CASE("estimate scales exactly with phi") {
  std::mt19937_64 rng(4);
  const Matrix x = RandomMatrix(40, 5, rng);
  const RademacherResult base = EstimateRademacher(x, 1.7, 300, 12);
  for (double c : {0.5, 2.0}) {
    const RademacherResult scaled = EstimateRademacher(x, c * 1.7, 300, 12);
    CHECK(scaled.estimate == c * base.estimate);
    CHECK(scaled.std_error == c * base.std_error);
  }
}

TEST_CASE("thread count does not change the estimate") {
  std::mt19937_64 rng(6);
  const Matrix x = RandomMatrix(60, 4, rng);
  const RademacherResult one = EstimateRademacher(x, 1.0, 500, 3, 1);
  const RademacherResult four = EstimateRademacher(x, 1.0, 500, 3, 4);
  CHECK(one.estimate == four.estimate);
  CHECK(one.std_error == four.std_error);
}

TEST_CASE("property: closed-form supremum matches a direction search") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t m = 1 + rng() % 4;
    const std::size_t d = 2 + rng() % 2;
    const Matrix x = RandomMatrix(m, d, rng);
    const double phi = 1.5;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<double> v(d, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t c = 0; c < d; ++c) v[c] += ((mask >> i) & 1U ? 1.0 : -1.0) * x(i, c);
      }
      const double closed = phi * Norm2(v) / static_cast<double>(m);

      // Directions on a (theta, psi) lattice with spacing h; every unit vector
      // lies within angle h of some lattice direction.
      const int n = 180;
      const double h = std::numbers::pi / n;
      double best = -1.0;
      for (int a = 0; a < 2 * n; ++a) {
        for (int b = 0; b <= (d == 3 ? n : 0); ++b) {
          const double theta = a * h;
          const double psi = d == 3 ? b * h : std::numbers::pi / 2;
          const double w[3] = {phi * std::sin(psi) * std::cos(theta),
                               phi * std::sin(psi) * std::sin(theta), phi * std::cos(psi)};
          double obj = 0.0;
          for (std::size_t c = 0; c < d; ++c) obj += w[c] * v[c];
          best = std::max(best, obj / static_cast<double>(m));
        }
      }
      CHECK(best <= closed + 1e-12);
      CHECK(best >= closed * std::cos(h) - 1e-12);
    }
  }
}

TEST_CASE("property: standard error shrinks like 1/sqrt(draws)") {
  std::mt19937_64 rng(21);
  const Matrix x = RandomMatrix(25, 3, rng);
  const RademacherResult few = EstimateRademacher(x, 1.0, 200, 5);
  const RademacherResult many = EstimateRademacher(x, 1.0, 20000, 5);
  const double ratio = many.std_error / few.std_error;
  CHECK(ratio > 0.1 * 0.8);
  CHECK(ratio < 0.1 * 1.2);
}

TEST_CASE("property: estimate below the analytic bound") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix x = RandomMatrix(5 + rng() % 100, 1 + rng() % 8, rng);
    const RademacherResult r = EstimateRademacher(x, 2.0, 400, trial);
    const NormStats stats{MaxRowNorm(x), 2.0, x.rows()};
    CHECK(r.estimate <= AnalyticRademacherBound(stats) + 3.0 * r.std_error);
    CHECK(r.analytic_bound == AnalyticRademacherBound(stats));
  }
}

TEST_CASE("analytic bound arithmetic") {
  CHECK(AnalyticRademacherBound({0.0, 5.0, 9}) == 0.0);
  CHECK(AnalyticRademacherBound({2.0, 3.0, 36}) == 1.0);
  CHECK_THROWS_AS(AnalyticRademacherBound({1.0, 1.0, 0}), ValidationError);
}

TEST_CASE("sample complexity arithmetic") {
  ComplexityBudget unit;
  unit.delta = std::exp(-1.0);
  unit.eps_alpha = unit.eps_gamma = 1.0 - 1e-9;
  CHECK(PacfSampleComplexity(NormStats{1.0, 1.0, 1}, unit, ComplexityVariant::kUniform) ==
        doctest::Approx(1.0).epsilon(1e-8));

  const ComplexityBudget b;
  const double ln20 = 2.995732273553991;
  CHECK(std::log(20.0) == doctest::Approx(ln20).epsilon(1e-15));
  const NormStats s{2.0, 3.0, 1};
  const double uniform = PacfSampleComplexity(s, b, ComplexityVariant::kUniform);
  const double erm = PacfSampleComplexity(s, b, ComplexityVariant::kErm);
  CHECK(uniform == doctest::Approx(36.0 * ln20 / 1e-4).epsilon(1e-12));
  CHECK(std::round(uniform) == 1078464.0);
  CHECK(erm == doctest::Approx(36.0 * ln20 / 1e-2).epsilon(1e-12));
  CHECK(std::round(erm * 10.0) / 10.0 == doctest::Approx(10784.6));
  CHECK(PacfSampleComplexity(0.0, b, ComplexityVariant::kUniform) == 0.0);
}

TEST_CASE("property: budget monotonicity and erm below uniform") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    ComplexityBudget b;
    b.delta = u(rng);
    b.eps_alpha = u(rng);
    b.eps_gamma = u(rng);
    const double r = 5.0 * u(rng);
    const double base = PacfSampleComplexity(r, b, ComplexityVariant::kUniform);
    CHECK(PacfSampleComplexity(r, b, ComplexityVariant::kErm) <= base);
    CHECK(PacfSampleComplexity(r * 1.1, b, ComplexityVariant::kUniform) >= base);
    ComplexityBudget tighter = b;
    tighter.delta *= 0.5;
    CHECK(PacfSampleComplexity(r, tighter, ComplexityVariant::kUniform) >= base);
    tighter = b;
    tighter.eps_alpha *= 0.5;
    CHECK(PacfSampleComplexity(r, tighter, ComplexityVariant::kUniform) >= base);
    tighter = b;
    tighter.eps_gamma *= 0.5;
    CHECK(PacfSampleComplexity(r, tighter, ComplexityVariant::kUniform) >= base);
  }
}

TEST_CASE("invalid budgets") {
  ComplexityBudget b;
  b.delta = 1.5;
  CHECK_THROWS_AS(PacfSampleComplexity(1.0, b, ComplexityVariant::kUniform), ValidationError);
  b = {};
  b.eps_alpha = 0.0;
  CHECK_THROWS_AS(b.Validate(), ValidationError);
  b = {};
  b.constant = -1.0;
  CHECK_THROWS_AS(b.Validate(), ValidationError);
}

TEST_CASE("collaborative bounds") {
  const auto adult = ComputeCollaborativeBounds(108, 4, 0.1, 0.05);
  CHECK(adult.uniform_lower == doctest::Approx(1026.0).epsilon(1e-12));
  CHECK(adult.warnings.empty());
  REQUIRE(adult.personalized.has_value());
  CHECK(*adult.personalized == doctest::Approx(adult.centralized / std::log(4.0)));
  const double ln4 = std::log(4.0);
  CHECK(adult.centralized ==
        doctest::Approx(ln4 * ln4 / 0.1 * (112.0 * std::log(10.0) + 4.0 * std::log(20.0))));

  const auto german = ComputeCollaborativeBounds(61, 4, 0.1, 0.05);
  CHECK(german.uniform_lower == doctest::Approx(579.5).epsilon(1e-12));

  const auto single = ComputeCollaborativeBounds(10, 1, 0.1, 0.05);
  CHECK(single.centralized == 0.0);
  CHECK_FALSE(single.personalized.has_value());

  CHECK(ComputeCollaborativeBounds(10, 2, 0.3, 0.05).warnings.size() == 1);
  CHECK_THROWS_AS(ComputeCollaborativeBounds(10, 2, 0.1, 1.5), ValidationError);
  CHECK_THROWS_AS(ComputeCollaborativeBounds(0, 2, 0.1, 0.05), ValidationError);
}

}  // TEST_SUITE
