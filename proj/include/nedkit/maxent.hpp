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
//
// Multinomial logistic regression with l2 regularization over binary
// features, minimized with L-BFGS. Deterministic: no randomness anywhere,
// and the objective is invariant under example reordering.

#ifndef NEDKIT_MAXENT_HPP_
#define NEDKIT_MAXENT_HPP_

#include <cstdint>
#include <functional>
#include <vector>

namespace nedkit {

struct MaxentExample {
  std::vector<std::uint32_t> features;  // binary, interned ids
  std::uint32_t label = 0;
};

struct MaxentOptions {
  double l2_strength = 1.0;
  int max_iterations = 200;
  double tolerance = 1e-6;  // on the gradient norm, relative to the start
};

struct MaxentModel {
  std::size_t n_classes = 0;
  std::size_t n_features = 0;
  std::vector<double> weights;  // row-major classes x features

  double weight(std::size_t cls, std::size_t feature) const {
    return weights[cls * n_features + feature];
  }
  // Class probabilities for one input; sums to one.
  std::vector<double> probabilities(const std::vector<std::uint32_t>& features) const;
  std::size_t predict(const std::vector<std::uint32_t>& features) const;
};

// Regularized negative log-likelihood and its gradient at w.
double maxent_objective(const std::vector<MaxentExample>& examples,
                        std::size_t n_classes, std::size_t n_features, double l2,
                        const std::vector<double>& w, std::vector<double>* grad);

MaxentModel train_maxent(const std::vector<MaxentExample>& examples,
                         std::size_t n_classes, std::size_t n_features,
                         const MaxentOptions& options = {});

// General-purpose deterministic minimizer (exposed for tests).
struct LbfgsResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

LbfgsResult lbfgs_minimize(
    std::size_t n,
    const std::function<double(const std::vector<double>&, std::vector<double>*)>& fn,
    int max_iterations, double tolerance);

}  // namespace nedkit

#endif  // NEDKIT_MAXENT_HPP_
