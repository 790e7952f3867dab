// Copyright 2026 The Nedkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nedkit/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace nedkit {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

std::vector<double> MaxentModel::probabilities(
    const std::vector<std::uint32_t>& features) const {
  std::vector<double> scores(n_classes, 0.0);
  for (std::size_t c = 0; c < n_classes; ++c) {
    const double* row = weights.data() + c * n_features;
    double s = 0.0;
    for (std::uint32_t f : features) {
      if (f < n_features) s += row[f];
    }
    scores[c] = s;
  }
  double max_score = *std::max_element(scores.begin(), scores.end());
  double z = 0.0;
  for (double& s : scores) {
    s = std::exp(s - max_score);
    z += s;
  }
  for (double& s : scores) s /= z;
  return scores;
}

std::size_t MaxentModel::predict(const std::vector<std::uint32_t>& features) const {
  std::vector<double> p = probabilities(features);
  return static_cast<std::size_t>(
      std::max_element(p.begin(), p.end()) - p.begin());
}

double maxent_objective(const std::vector<MaxentExample>& examples,
                        std::size_t n_classes, std::size_t n_features, double l2,
                        const std::vector<double>& w, std::vector<double>* grad) {
  if (grad != nullptr) {
    grad->assign(w.size(), 0.0);
  }
  double loss = 0.0;
  std::vector<double> scores(n_classes);
  for (const MaxentExample& ex : examples) {
    for (std::size_t c = 0; c < n_classes; ++c) {
      const double* row = w.data() + c * n_features;
      double s = 0.0;
      for (std::uint32_t f : ex.features) s += row[f];
      scores[c] = s;
    }
    double max_score = *std::max_element(scores.begin(), scores.end());
    double z = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
      z += std::exp(scores[c] - max_score);
    }
    double log_z = max_score + std::log(z);
    loss += log_z - scores[ex.label];
    if (grad != nullptr) {
      for (std::size_t c = 0; c < n_classes; ++c) {
        double p = std::exp(scores[c] - log_z);
        double coeff = p - (c == ex.label ? 1.0 : 0.0);
        double* row = grad->data() + c * n_features;
        for (std::uint32_t f : ex.features) row[f] += coeff;
      }
    }
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    loss += 0.5 * l2 * w[i] * w[i];
    if (grad != nullptr) (*grad)[i] += l2 * w[i];
  }
  return loss;
}

LbfgsResult lbfgs_minimize(
    std::size_t n,
    const std::function<double(const std::vector<double>&, std::vector<double>*)>& fn,
    int max_iterations, double tolerance) {
  constexpr std::size_t kHistory = 8;
  constexpr double kArmijo = 1e-4;

  LbfgsResult result;
  result.x.assign(n, 0.0);
  std::vector<double> grad(n), new_grad(n);
  result.fx = fn(result.x, &grad);

  double g0 = norm2(grad);
  double target = tolerance * std::max(1.0, g0);
  if (g0 <= target) {
    result.converged = true;
    return result;
  }

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<double> direction(n), x_next(n);

  for (int iter = 0; iter < max_iterations; ++iter) {
    // Two-loop recursion for the quasi-Newton direction.
    direction = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * dot(s_hist[i], direction);
      for (std::size_t k = 0; k < n; ++k) direction[k] -= alpha[i] * y_hist[i][k];
    }
    if (!s_hist.empty()) {
      double gamma = dot(s_hist.back(), y_hist.back()) /
                     std::max(dot(y_hist.back(), y_hist.back()), 1e-300);
      for (double& d : direction) d *= gamma;
    }
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      double beta = rho_hist[i] * dot(y_hist[i], direction);
      for (std::size_t k = 0; k < n; ++k) {
        direction[k] += (alpha[i] - beta) * s_hist[i][k];
      }
    }
    for (double& d : direction) d = -d;

    double descent = dot(grad, direction);
    if (descent >= 0.0) {
      // Stale curvature; fall back to steepest descent.
      for (std::size_t k = 0; k < n; ++k) direction[k] = -grad[k];
      descent = -dot(grad, grad);
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    // Backtracking line search with sufficient decrease.
    double step = s_hist.empty() ? 1.0 / std::max(1.0, norm2(grad)) : 1.0;
    double fx_next = result.fx;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t k = 0; k < n; ++k) x_next[k] = result.x[k] + step * direction[k];
      fx_next = fn(x_next, &new_grad);
      if (fx_next <= result.fx + kArmijo * step * descent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> s(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = x_next[k] - result.x[k];
      y[k] = new_grad[k] - grad[k];
    }
    double ys = dot(y, s);
    if (ys > 1e-12) {
      if (s_hist.size() == kHistory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / ys);
    }

    result.x.swap(x_next);
    result.fx = fx_next;
    grad.swap(new_grad);
    result.iterations = iter + 1;

    if (norm2(grad) <= target) {
      result.converged = true;
      break;
    }
  }
  return result;
}

MaxentModel train_maxent(const std::vector<MaxentExample>& examples,
                         std::size_t n_classes, std::size_t n_features,
                         const MaxentOptions& options) {
  MaxentModel model;
  model.n_classes = n_classes;
  model.n_features = n_features;
  auto objective = [&](const std::vector<double>& w, std::vector<double>* grad) {
    return maxent_objective(examples, n_classes, n_features, options.l2_strength, w,
                            grad);
  };
  LbfgsResult result = lbfgs_minimize(n_classes * n_features, objective,
                                      options.max_iterations, options.tolerance);
  model.weights = std::move(result.x);
  return model;
}

}  // namespace nedkit
