// include/f0vc/nn/layers.h

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

#ifndef F0VC_NN_LAYERS_H_
#define F0VC_NN_LAYERS_H_

#include <string>
#include <vector>

#include "f0vc/common/rng.h"
#include "f0vc/nn/ops.h"

namespace f0vc::nn {

struct NamedTensor {
  std::string name;
  Tensor tensor;
  bool trainable = true;  // false for running statistics
};

// Owns the name -> tensor registry of a network. Layers keep handles to the
// tensors they register, so restoring values in place through Find() is seen
// by every layer.
class ParameterStore {
 public:
  Tensor Add(const std::string &name, Tensor t, bool trainable = true);
  const std::vector<NamedTensor> &entries() const { return entries_; }
  std::vector<Tensor> Trainable() const;
  // Trainable tensors whose name starts with `prefix`; frozen tensors
  // (requires_grad cleared) are skipped.
  std::vector<Tensor> TrainableWithPrefix(const std::string &prefix) const;
  const Tensor *Find(const std::string &name) const;
  int64_t NumTrainableValues() const;

 private:
  std::vector<NamedTensor> entries_;
};

enum class LayerKind { kConv5x1, kBatchNorm, kRelu, kLstm, kBiLstm, kLinear };

const char *LayerKindName(LayerKind kind);

// in_dim is the input width for every kind. conv5x1 maps in_dim -> channels,
// batchnorm and relu keep in_dim, lstm maps in_dim -> cell_dim, bilstm
// in_dim -> 2 * cell_dim, linear in_dim -> out_dim.
struct LayerSpec {
  LayerKind kind = LayerKind::kRelu;
  int64_t in_dim = 0;
  int64_t out_dim = 0;
  int64_t channels = 0;
  int64_t cell_dim = 0;

  int64_t OutputDim() const;
  void Validate() const;
};

// One layer of the stack. Parameters are drawn from uniform(-k, k) with
// k = 1 / sqrt(fan_in); LSTM forget-gate biases start at 1.
class Layer {
 public:
  static constexpr int64_t kKernel = 5;

  Layer(const LayerSpec &spec, ParameterStore &store, const std::string &name, Rng &rng);

  // `training` selects batch vs running statistics for batchnorm and is
  // ignored by the other kinds. Throws DataError on an input width mismatch.
  Tensor Forward(Tape &tape, const Tensor &x, bool training);

  const LayerSpec &spec() const { return spec_; }

 private:
  LayerSpec spec_;
  Tensor weight_, bias_;  // conv, linear
  Tensor gamma_, beta_;   // batchnorm
  BatchNormState bn_;
  // lstm uses index 0; bilstm uses 0 (forward) and 1 (backward).
  Tensor w_ih_[2], w_hh_[2], b_[2];
};

}  // namespace f0vc::nn

#endif  // F0VC_NN_LAYERS_H_
