// include/f0vc/nn/adam.h

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

#ifndef F0VC_NN_ADAM_H_
#define F0VC_NN_ADAM_H_

#include <vector>

#include "f0vc/nn/tensor.h"

namespace f0vc::nn {

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double clip_norm = 1.0;  // global gradient norm; <= 0 disables clipping
};

// Adam with bias correction over a fixed list of parameters.
class Adam {
 public:
  Adam(std::vector<Tensor> params, AdamOptions options);

  // Clips, updates every parameter, then clears the gradients. Throws
  // UsageError if a registered parameter has no gradient.
  void Step();

  // Global L2 norm of the gradients as of the last Step, before clipping.
  double last_grad_norm() const { return last_grad_norm_; }

  int64_t step_count() const { return step_; }
  const AdamOptions &options() const { return options_; }
  void set_lr(double lr) { options_.lr = lr; }

  // Moment buffers, one per parameter in registration order.
  std::vector<Tensor> &first_moments() { return m_; }
  std::vector<Tensor> &second_moments() { return v_; }
  void set_step_count(int64_t step) { step_ = step; }
  size_t num_params() const { return params_.size(); }

 private:
  std::vector<Tensor> params_;
  std::vector<Tensor> m_, v_;
  AdamOptions options_;
  int64_t step_ = 0;
  double last_grad_norm_ = 0.0;
};

}  // namespace f0vc::nn

#endif  // F0VC_NN_ADAM_H_
