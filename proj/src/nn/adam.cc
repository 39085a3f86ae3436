// src/nn/adam.cc

// Copyright 2026  The f0vc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "f0vc/nn/adam.h"

#include <cmath>

#include "f0vc/common/error.h"

namespace f0vc::nn {

Adam::Adam(std::vector<Tensor> params, AdamOptions options)
    : params_(std::move(params)), options_(options) {
  for (const Tensor &p : params_) {
    m_.emplace_back(p.shape());
    v_.emplace_back(p.shape());
  }
}

void Adam::Step() {
  double sq = 0.0;
  for (size_t i = 0; i < params_.size(); ++i) {
    if (!params_[i].has_grad())
      throw UsageError("Adam::Step: parameter " + std::to_string(i) + " has no gradient");
    for (double g : params_[i].grad()) sq += g * g;
  }
  last_grad_norm_ = std::sqrt(sq);
  if (!std::isfinite(last_grad_norm_)) throw NumericError("Adam::Step: non-finite gradient norm");
  const double clip = options_.clip_norm > 0.0 && last_grad_norm_ > options_.clip_norm
                          ? options_.clip_norm / last_grad_norm_
                          : 1.0;

  ++step_;
  const double b1 = options_.beta1, b2 = options_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  for (size_t i = 0; i < params_.size(); ++i) {
    auto p = params_[i].values();
    auto g = params_[i].grad();
    auto m = m_[i].values();
    auto v = v_[i].values();
    for (size_t j = 0; j < p.size(); ++j) {
      const double gj = g[j] * clip;
      m[j] = b1 * m[j] + (1.0 - b1) * gj;
      v[j] = b2 * v[j] + (1.0 - b2) * gj * gj;
      const double m_hat = m[j] / c1;
      const double v_hat = v[j] / c2;
      p[j] -= options_.lr * m_hat / (std::sqrt(v_hat) + options_.eps);
    }
    params_[i].ClearGrad();
  }
}

}  // namespace f0vc::nn
