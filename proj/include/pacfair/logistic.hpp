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

#ifndef PACFAIR_LOGISTIC_HPP_
#define PACFAIR_LOGISTIC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pacfair/matrix.hpp"

namespace pacfair {

// 9 values, 1e-4 ... 1e4, one per decade.
std::vector<double> DefaultLambdaGrid();

struct TrainConfig {
  std::vector<double> lambda_grid = DefaultLambdaGrid();
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  std::size_t max_iters = 10000;
  double tol = 1e-8;  // on the full gradient norm, intercept included
  bool fit_intercept = true;
  bool stratified = true;
  std::size_t lbfgs_memory = 10;

  void Validate() const;
};

struct TrainedModel {
  std::vector<double> w;
  double b = 0.0;
  double lambda = 0.0;
  bool converged = false;
  double cv_log_loss = 0.0;  // set by callers that chose lambda by CV
  std::size_t iterations = 0;
  double grad_norm = 0.0;
  std::vector<double> loss_trace;  // objective after every accepted step

  bool operator==(const TrainedModel&) const = default;
};

// Objective and gradient of
//   (1/m) sum_i log(1 + exp(-s_i (w.x_i + b))) + (lambda/2) ||w||^2,
// s_i = 2 y_i - 1. The intercept is not penalized. grad_w must have x.cols()
// entries.
double RegularizedLogLoss(const Matrix& x, std::span<const int> y, double lambda,
                          std::span<const double> w, double b, std::span<double> grad_w,
                          double* grad_b);

// Unpenalized mean log loss of a model on (x, y).
double MeanLogLoss(const TrainedModel& model, const Matrix& x, std::span<const int> y);

// Minimizes RegularizedLogLoss with L-BFGS and Armijo backtracking, starting
// from zero or from `warm_start`. Deterministic. Returns the last iterate;
// converged is true iff its gradient norm is <= config.tol.
TrainedModel TrainLogistic(const Matrix& x, std::span<const int> y, double lambda,
                           const TrainConfig& config, const TrainedModel* warm_start = nullptr);

// Fold id in [0, folds) for every row. Stratified: shuffled negatives then
// shuffled positives are dealt round-robin, so each fold gets floor or ceil
// of its share of each class.
std::vector<std::size_t> AssignFolds(std::span<const int> y, std::size_t folds,
                                     std::uint64_t seed, bool stratified);

struct CvResult {
  double lambda_star = 0.0;
  std::size_t folds = 0;
  std::vector<double> lambdas;                      // as given in the grid
  std::vector<double> mean_loss;                    // per lambda
  std::vector<std::vector<double>> fold_loss;       // [lambda][fold]
  std::vector<std::vector<double>> fold_weight_norm;  // [lambda][fold]
};

// k-fold cross-validation over config.lambda_grid. lambda_star minimizes the
// mean held-out log loss; ties go to the larger lambda. Within a fold the
// grid is walked from the largest lambda down, warm-starting each fit.
// Throws ValidationError when there are fewer rows than folds, or when
// stratifying a single-label sample.
CvResult CrossValidate(const Matrix& x, std::span<const int> y, const TrainConfig& config,
                       unsigned threads = 1);

struct NormStats {
  double r = 0.0;    // max_i ||x_i||_2
  double phi = 0.0;  // ||w||_2, intercept excluded
  std::size_t m = 0;
};

NormStats ComputeNormStats(const Matrix& x, const TrainedModel& model);

double Sigmoid(double z);

// sigmoid(w.x + b) for every row.
std::vector<double> PredictScores(const TrainedModel& model, const Matrix& x);

}  // namespace pacfair

#endif  // PACFAIR_LOGISTIC_HPP_
