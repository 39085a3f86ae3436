// include/f0vc/nn/ops.h

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

#ifndef F0VC_NN_OPS_H_
#define F0VC_NN_OPS_H_

#include <vector>

#include "f0vc/nn/tensor.h"

// Differentiable operations. Sequence tensors are [batch, time, channels];
// every op checks its input shapes (ShapeError-style DataError naming both
// shapes) and its output for NaN/Inf.
namespace f0vc::nn {

// y = x w + b over the last axis. x [..., in], w [in, out], b [out] or
// undefined.
Tensor Linear(Tape &tape, const Tensor &x, const Tensor &w, const Tensor &b);

// Same-length 1-D convolution along time, stride 1, zero padding K/2 on each
// side. x [B, T, Cin]; w [K * Cin, Cout] where row k * Cin + c multiplies
// x[t + k - K/2, c]; b [Cout].
Tensor Conv1d(Tape &tape, const Tensor &x, const Tensor &w, const Tensor &b);

Tensor Relu(Tape &tape, const Tensor &x);

Tensor Add(Tape &tape, const Tensor &a, const Tensor &b);

// y = scale * x + shift with constant scalars.
Tensor Affine(Tape &tape, const Tensor &x, double scale, double shift);

// Concatenation along the last axis; leading dimensions must agree.
Tensor Concat(Tape &tape, const std::vector<Tensor> &parts);

struct BatchNormState {
  Tensor running_mean;  // [C]
  Tensor running_var;   // [C]
};

// Per-channel normalization over every leading position (batch x time).
// Training mode normalizes with batch statistics and updates the running
// averages with `momentum`; inference mode uses the running averages.
Tensor BatchNorm(Tape &tape, const Tensor &x, const Tensor &gamma, const Tensor &beta,
                 BatchNormState &state, bool training, double momentum = 0.1, double eps = 1e-5);

// Single-direction LSTM layer, gate order (input, forget, cell, output).
// x [B, T, In]; w_ih [In, 4H]; w_hh [H, 4H]; b [4H]. With reverse=true the
// sequence is consumed from the last frame to the first and output frame t
// holds the state after reading frames T-1..t.
Tensor Lstm(Tape &tape, const Tensor &x, const Tensor &w_ih, const Tensor &w_hh, const Tensor &b,
            bool reverse);

// y[b, j, :] = x[b, frames[j], begin:end].
Tensor SelectFrames(Tape &tape, const Tensor &x, const std::vector<int64_t> &frames,
                    int64_t channel_begin, int64_t channel_end);

// y[b, k * factor + r, :] = x[b, k, :] for r in [0, factor).
Tensor RepeatFrames(Tape &tape, const Tensor &x, int64_t factor);

// sum(mask * (a - b)^2) / batch. mask is [B, T] over the first two axes of
// a [B, T, C], or undefined for all ones.
Tensor SquaredError(Tape &tape, const Tensor &a, const Tensor &b, const Tensor &mask = {});

// sum(|a - b|) / batch.
Tensor AbsError(Tape &tape, const Tensor &a, const Tensor &b);

// sum(x * weights) as a scalar; `weights` has the shape of x.
Tensor SumProduct(Tape &tape, const Tensor &x, const Tensor &weights);

// sum(x) as a scalar.
Tensor Sum(Tape &tape, const Tensor &x);

// sum_i weights[i] * terms[i] for scalar terms.
Tensor WeightedSum(Tape &tape, const std::vector<Tensor> &terms,
                   const std::vector<double> &weights);

}  // namespace f0vc::nn

#endif  // F0VC_NN_OPS_H_
