// src/nn/layers.cc

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

#include "f0vc/nn/layers.h"

#include <cmath>

#include "f0vc/common/error.h"

namespace f0vc::nn {

namespace {

Tensor UniformTensor(Shape shape, double bound, Rng &rng) {
  Tensor t(std::move(shape), true);
  for (double &v : t.values()) v = rng.Uniform(-bound, bound);
  return t;
}

}  // namespace

Tensor ParameterStore::Add(const std::string &name, Tensor t, bool trainable) {
  if (Find(name) != nullptr) throw UsageError("duplicate parameter name: " + name);
  t.set_requires_grad(trainable);
  entries_.push_back({name, t, trainable});
  return t;
}

std::vector<Tensor> ParameterStore::Trainable() const {
  return TrainableWithPrefix("");
}

std::vector<Tensor> ParameterStore::TrainableWithPrefix(const std::string &prefix) const {
  std::vector<Tensor> out;
  for (const auto &e : entries_)
    if (e.trainable && e.tensor.requires_grad() && e.name.compare(0, prefix.size(), prefix) == 0)
      out.push_back(e.tensor);
  return out;
}

const Tensor *ParameterStore::Find(const std::string &name) const {
  for (const auto &e : entries_)
    if (e.name == name) return &e.tensor;
  return nullptr;
}

int64_t ParameterStore::NumTrainableValues() const {
  int64_t n = 0;
  for (const auto &e : entries_)
    if (e.trainable) n += e.tensor.size();
  return n;
}

const char *LayerKindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv5x1:
      return "conv5x1";
    case LayerKind::kBatchNorm:
      return "batchnorm";
    case LayerKind::kRelu:
      return "relu";
    case LayerKind::kLstm:
      return "lstm";
    case LayerKind::kBiLstm:
      return "bilstm";
    case LayerKind::kLinear:
      return "linear";
  }
  return "?";
}

int64_t LayerSpec::OutputDim() const {
  switch (kind) {
    case LayerKind::kConv5x1:
      return channels;
    case LayerKind::kBatchNorm:
    case LayerKind::kRelu:
      return in_dim;
    case LayerKind::kLstm:
      return cell_dim;
    case LayerKind::kBiLstm:
      return 2 * cell_dim;
    case LayerKind::kLinear:
      return out_dim;
  }
  return 0;
}

void LayerSpec::Validate() const {
  if (in_dim <= 0) throw UsageError(std::string(LayerKindName(kind)) + ": in_dim must be positive");
  if (OutputDim() <= 0)
    throw UsageError(std::string(LayerKindName(kind)) + ": output width must be positive");
}

Layer::Layer(const LayerSpec &spec, ParameterStore &store, const std::string &name, Rng &rng)
    : spec_(spec) {
  spec_.Validate();
  const int64_t in = spec.in_dim;
  switch (spec.kind) {
    case LayerKind::kConv5x1: {
      const double k = 1.0 / std::sqrt(static_cast<double>(kKernel * in));
      weight_ = store.Add(name + ".weight", UniformTensor({kKernel * in, spec.channels}, k, rng));
      bias_ = store.Add(name + ".bias", UniformTensor({spec.channels}, k, rng));
      break;
    }
    case LayerKind::kLinear: {
      const double k = 1.0 / std::sqrt(static_cast<double>(in));
      weight_ = store.Add(name + ".weight", UniformTensor({in, spec.out_dim}, k, rng));
      bias_ = store.Add(name + ".bias", UniformTensor({spec.out_dim}, k, rng));
      break;
    }
    case LayerKind::kBatchNorm: {
      Tensor g({in}), b({in}), rm({in}), rv({in});
      for (double &v : g.values()) v = 1.0;
      for (double &v : rv.values()) v = 1.0;
      gamma_ = store.Add(name + ".gamma", g);
      beta_ = store.Add(name + ".beta", b);
      bn_.running_mean = store.Add(name + ".running_mean", rm, false);
      bn_.running_var = store.Add(name + ".running_var", rv, false);
      break;
    }
    case LayerKind::kRelu:
      break;
    case LayerKind::kLstm:
    case LayerKind::kBiLstm: {
      const int64_t h = spec.cell_dim;
      const double k = 1.0 / std::sqrt(static_cast<double>(h));
      const int directions = spec.kind == LayerKind::kBiLstm ? 2 : 1;
      for (int d = 0; d < directions; ++d) {
        const std::string p = name + (directions == 2 ? (d == 0 ? ".fwd" : ".bwd") : "");
        w_ih_[d] = store.Add(p + ".w_ih", UniformTensor({in, 4 * h}, k, rng));
        w_hh_[d] = store.Add(p + ".w_hh", UniformTensor({h, 4 * h}, k, rng));
        Tensor b = UniformTensor({4 * h}, k, rng);
        for (int64_t j = h; j < 2 * h; ++j) b.values()[j] = 1.0;
        b_[d] = store.Add(p + ".bias", b);
      }
      break;
    }
  }
}

Tensor Layer::Forward(Tape &tape, const Tensor &x, bool training) {
  if (x.shape().back() != spec_.in_dim)
    throw DataError(std::string(LayerKindName(spec_.kind)) + ": input " + ShapeString(x.shape()) +
                    " does not match in_dim " + std::to_string(spec_.in_dim));
  switch (spec_.kind) {
    case LayerKind::kConv5x1:
      return Conv1d(tape, x, weight_, bias_);
    case LayerKind::kLinear:
      return Linear(tape, x, weight_, bias_);
    case LayerKind::kBatchNorm:
      return BatchNorm(tape, x, gamma_, beta_, bn_, training);
    case LayerKind::kRelu:
      return Relu(tape, x);
    case LayerKind::kLstm:
      return Lstm(tape, x, w_ih_[0], w_hh_[0], b_[0], false);
    case LayerKind::kBiLstm: {
      Tensor fwd = Lstm(tape, x, w_ih_[0], w_hh_[0], b_[0], false);
      Tensor bwd = Lstm(tape, x, w_ih_[1], w_hh_[1], b_[1], true);
      return Concat(tape, {fwd, bwd});
    }
  }
  throw UsageError("unknown layer kind");
}

}  // namespace f0vc::nn
