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

#include "pacfair/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "pacfair/error.hpp"
#include "pacfair/parallel.hpp"
#include "pacfair/random.hpp"

namespace pacfair {
namespace {

// log(1 + exp(t)) without overflow.
double Softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

// Neumaier compensated sum; the line search compares objective values that
// differ by a few ulps near the optimum.
class CompensatedSum {
 public:
  void Add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double Value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void CheckInputs(const Matrix& x, std::span<const int> y) {
  if (x.empty()) throw ValidationError("training matrix is empty");
  if (y.size() != x.rows()) {
    throw ValidationError("label count " + std::to_string(y.size()) + " does not match " +
                          std::to_string(x.rows()) + " rows");
  }
  for (double v : x.data()) {
    if (!std::isfinite(v)) throw ValidationError("training matrix has a non-finite entry");
  }
  for (int v : y) {
    if (v != 0 && v != 1) throw ValidationError("labels must be 0 or 1");
  }
}

// Objective over theta = (w, b) with b present iff fit_intercept.
class Objective {
 public:
  Objective(const Matrix& x, std::span<const int> y, double lambda, bool fit_intercept)
      : rows_(x), y_(y), lambda_(lambda), d_(x.cols()), fit_intercept_(fit_intercept) {}

  std::size_t dim() const { return d_ + (fit_intercept_ ? 1 : 0); }

  double Eval(std::span<const double> theta, std::span<double> grad) const {
    const std::size_t m = rows_.rows();
    const double b = fit_intercept_ ? theta[d_] : 0.0;
    std::span<const double> w = theta.first(d_);
    std::fill(grad.begin(), grad.end(), 0.0);
    std::span<double> gw = grad.first(d_);
    CompensatedSum loss;
    double gb = 0.0;
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double z = rows_.Dot(i, w) + b;
      const double s = y_[i] ? 1.0 : -1.0;
      loss.Add(Softplus(-s * z));
      const double residual = Sigmoid(z) - static_cast<double>(y_[i]);
      rows_.Axpy(i, residual * inv_m, gw);
      gb += residual;
    }
    double penalty = 0.0;
    for (std::size_t j = 0; j < d_; ++j) {
      penalty += w[j] * w[j];
      gw[j] += lambda_ * w[j];
    }
    if (fit_intercept_) grad[d_] = gb * inv_m;
    return loss.Value() * inv_m + 0.5 * lambda_ * penalty;
  }

 private:
  SparseRows rows_;
  std::span<const int> y_;
  double lambda_;
  std::size_t d_;
  bool fit_intercept_;
};

void Axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace

std::vector<double> DefaultLambdaGrid() {
  std::vector<double> grid;
  for (int e = -4; e <= 4; ++e) grid.push_back(std::pow(10.0, e));
  return grid;
}

void TrainConfig::Validate() const {
  if (lambda_grid.empty()) throw ValidationError("lambda grid is empty");
  for (double l : lambda_grid) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw ValidationError("lambda grid entries must be finite and > 0");
    }
  }
  if (folds < 2) throw ValidationError("folds must be >= 2");
  if (!(tol > 0.0)) throw ValidationError("tol must be > 0");
  if (max_iters == 0) throw ValidationError("max_iters must be >= 1");
  if (lbfgs_memory == 0) throw ValidationError("lbfgs_memory must be >= 1");
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double RegularizedLogLoss(const Matrix& x, std::span<const int> y, double lambda,
                          std::span<const double> w, double b, std::span<double> grad_w,
                          double* grad_b) {
  CheckInputs(x, y);
  if (w.size() != x.cols() || grad_w.size() != x.cols()) {
    throw ValidationError("weight dimension does not match the matrix");
  }
  Objective obj(x, y, lambda, /*fit_intercept=*/true);
  std::vector<double> theta(w.begin(), w.end());
  theta.push_back(b);
  std::vector<double> grad(theta.size());
  const double f = obj.Eval(theta, grad);
  std::copy(grad.begin(), grad.end() - 1, grad_w.begin());
  if (grad_b) *grad_b = grad.back();
  return f;
}

double MeanLogLoss(const TrainedModel& model, const Matrix& x, std::span<const int> y) {
  if (model.w.size() != x.cols()) throw ValidationError("model dimension does not match data");
  if (y.size() != x.rows() || x.empty()) throw ValidationError("bad evaluation sample");
  CompensatedSum loss;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double z = Dot(model.w, x.row(i)) + model.b;
    loss.Add(Softplus(y[i] ? -z : z));
  }
  return loss.Value() / static_cast<double>(x.rows());
}

TrainedModel TrainLogistic(const Matrix& x, std::span<const int> y, double lambda,
                           const TrainConfig& config, const TrainedModel* warm_start) {
  CheckInputs(x, y);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be > 0");
  if (!(config.tol > 0.0)) throw ValidationError("tol must be > 0");

  const Objective obj(x, y, lambda, config.fit_intercept);
  const std::size_t n = obj.dim();
  const std::size_t d = x.cols();

  std::vector<double> theta(n, 0.0);
  if (warm_start) {
    if (warm_start->w.size() != d) throw ValidationError("warm start has the wrong dimension");
    std::copy(warm_start->w.begin(), warm_start->w.end(), theta.begin());
    if (config.fit_intercept) theta[d] = warm_start->b;
  }
  std::vector<double> grad(n), trial(n), trial_grad(n), dir(n), alpha(config.lbfgs_memory);
  double f = obj.Eval(theta, grad);

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> memory;

  TrainedModel model;
  model.lambda = lambda;
  model.loss_trace.push_back(f);

  constexpr double kArmijo = 1e-4;
  std::size_t iter = 0;
  double gnorm = Norm2(grad);
  for (; iter < config.max_iters && gnorm > config.tol; ++iter) {
    // Two-loop recursion: dir = -H grad.
    std::copy(grad.begin(), grad.end(), dir.begin());
    for (std::size_t k = memory.size(); k-- > 0;) {
      alpha[k] = memory[k].rho * Dot(memory[k].s, dir);
      Axpy(-alpha[k], memory[k].y, dir);
    }
    if (!memory.empty()) {
      const auto& last = memory.back();
      const double scale = Dot(last.s, last.y) / Dot(last.y, last.y);
      for (double& v : dir) v *= scale;
    }
    for (std::size_t k = 0; k < memory.size(); ++k) {
      const double beta = memory[k].rho * Dot(memory[k].y, dir);
      Axpy(alpha[k] - beta, memory[k].s, dir);
    }
    for (double& v : dir) v = -v;

    double slope = Dot(grad, dir);
    if (!(slope < 0.0)) {
      memory.clear();
      for (std::size_t i = 0; i < n; ++i) dir[i] = -grad[i];
      slope = -gnorm * gnorm;
    }

    // Backtracking. Near the optimum the Armijo decrease drops below the
    // rounding of f, so a step that does not raise f, does not overshoot
    // along dir and shrinks the gradient is also accepted.
    double step = memory.empty() ? std::min(1.0, 1.0 / gnorm) : 1.0;
    bool accepted = false;
    double f_trial = f;
    while (step > 1e-20) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = theta[i] + step * dir[i];
      f_trial = obj.Eval(trial, trial_grad);
      if (f_trial <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      if (f_trial <= f && Dot(trial_grad, dir) <= (2.0 * kArmijo - 1.0) * slope &&
          Norm2(trial_grad) < gnorm) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (memory.empty()) break;  // stalled on steepest descent
      memory.clear();
      continue;
    }

    Pair pair{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = trial[i] - theta[i];
      pair.y[i] = trial_grad[i] - grad[i];
    }
    const double sy = Dot(pair.s, pair.y);
    if (sy > 1e-12 * Norm2(pair.s) * Norm2(pair.y) && sy > 0.0) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > config.lbfgs_memory) memory.pop_front();
    }
    theta.swap(trial);
    grad.swap(trial_grad);
    f = f_trial;
    gnorm = Norm2(grad);
    model.loss_trace.push_back(f);
  }

  model.w.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(d));
  model.b = config.fit_intercept ? theta[d] : 0.0;
  model.iterations = iter;
  model.grad_norm = gnorm;
  model.converged = gnorm <= config.tol;
  return model;
}

std::vector<std::size_t> AssignFolds(std::span<const int> y, std::size_t folds,
                                     std::uint64_t seed, bool stratified) {
  if (folds < 1) throw ValidationError("folds must be >= 1");
  Rng rng(seed);
  std::vector<std::size_t> order;
  order.reserve(y.size());
  if (stratified) {
    std::vector<std::size_t> neg, pos;
    for (std::size_t i = 0; i < y.size(); ++i) (y[i] ? pos : neg).push_back(i);
    Shuffle(std::span(neg), rng);
    Shuffle(std::span(pos), rng);
    order = std::move(neg);
    order.insert(order.end(), pos.begin(), pos.end());
  } else {
    for (std::size_t i = 0; i < y.size(); ++i) order.push_back(i);
    Shuffle(std::span(order), rng);
  }
  std::vector<std::size_t> fold(y.size());
  for (std::size_t i = 0; i < order.size(); ++i) fold[order[i]] = i % folds;
  return fold;
}

CvResult CrossValidate(const Matrix& x, std::span<const int> y, const TrainConfig& config,
                       unsigned threads) {
  config.Validate();
  CheckInputs(x, y);
  const std::size_t m = x.rows();
  if (m < config.folds) {
    throw ValidationError("sample has " + std::to_string(m) + " rows but " +
                          std::to_string(config.folds) +
                          " folds were requested; reduce the fold count");
  }
  if (config.stratified) {
    std::size_t pos = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
    if (pos == 0 || pos == m) {
      throw ValidationError("stratified cross-validation needs both labels present");
    }
  }

  const std::size_t k = config.folds;
  const std::size_t nl = config.lambda_grid.size();
  const auto fold_of = AssignFolds(y, k, config.seed, config.stratified);

  // Largest lambda first for warm starts.
  std::vector<std::size_t> path(nl);
  for (std::size_t i = 0; i < nl; ++i) path[i] = i;
  std::stable_sort(path.begin(), path.end(), [&](std::size_t a, std::size_t b) {
    return config.lambda_grid[a] > config.lambda_grid[b];
  });

  CvResult result;
  result.folds = k;
  result.lambdas = config.lambda_grid;
  result.fold_loss.assign(nl, std::vector<double>(k));
  result.fold_weight_norm.assign(nl, std::vector<double>(k));

  ParallelFor(k, threads, [&](std::size_t f) {
    std::vector<std::size_t> train, held;
    for (std::size_t i = 0; i < m; ++i) (fold_of[i] == f ? held : train).push_back(i);
    const Matrix x_train = x.SelectRows(train);
    const Matrix x_held = x.SelectRows(held);
    std::vector<int> y_train, y_held;
    for (auto i : train) y_train.push_back(y[i]);
    for (auto i : held) y_held.push_back(y[i]);

    TrainedModel previous;
    bool have_previous = false;
    for (std::size_t li : path) {
      TrainedModel model = TrainLogistic(x_train, y_train, config.lambda_grid[li], config,
                                         have_previous ? &previous : nullptr);
      result.fold_loss[li][f] = MeanLogLoss(model, x_held, y_held);
      result.fold_weight_norm[li][f] = Norm2(model.w);
      model.loss_trace.clear();
      previous = std::move(model);
      have_previous = true;
    }
  });

  result.mean_loss.resize(nl);
  std::size_t best = nl;
  for (std::size_t li = 0; li < nl; ++li) {
    double sum = 0.0;
    for (double v : result.fold_loss[li]) sum += v;
    result.mean_loss[li] = sum / static_cast<double>(k);
    if (best == nl || result.mean_loss[li] < result.mean_loss[best] ||
        (result.mean_loss[li] == result.mean_loss[best] &&
         config.lambda_grid[li] > config.lambda_grid[best])) {
      best = li;
    }
  }
  result.lambda_star = config.lambda_grid[best];
  return result;
}

NormStats ComputeNormStats(const Matrix& x, const TrainedModel& model) {
  if (model.w.size() != x.cols()) {
    throw ValidationError("model has " + std::to_string(model.w.size()) +
                          " weights but the data has " + std::to_string(x.cols()) + " columns");
  }
  if (x.empty()) throw ValidationError("norm statistics need at least one row");
  return NormStats{MaxRowNorm(x), Norm2(model.w), x.rows()};
}

std::vector<double> PredictScores(const TrainedModel& model, const Matrix& x) {
  if (model.w.size() != x.cols()) {
    throw ValidationError("model has " + std::to_string(model.w.size()) +
                          " weights but the data has " + std::to_string(x.cols()) + " columns");
  }
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = Sigmoid(Dot(model.w, x.row(i)) + model.b);
  return out;
}

}  // namespace pacfair
