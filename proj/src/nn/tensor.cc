// src/nn/tensor.cc

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

#include "f0vc/nn/tensor.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "f0vc/common/error.h"

namespace f0vc::nn {

std::string ShapeString(const Shape &shape) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < shape.size(); ++i) os << (i ? ", " : "") << shape[i];
  os << ']';
  return os.str();
}

int64_t NumElements(const Shape &shape) {
  int64_t n = 1;
  for (int64_t d : shape) {
    if (d < 0) throw UsageError("negative dimension in shape " + ShapeString(shape));
    n *= d;
  }
  return n;
}

Tensor::Tensor(Shape shape, bool requires_grad) : impl_(std::make_shared<Impl>()) {
  impl_->values.assign(NumElements(shape), 0.0);
  impl_->shape = std::move(shape);
  impl_->requires_grad = requires_grad;
}

Tensor::Tensor(Shape shape, std::vector<double> values, bool requires_grad)
    : impl_(std::make_shared<Impl>()) {
  if (static_cast<int64_t>(values.size()) != NumElements(shape))
    throw DataError("Tensor: " + std::to_string(values.size()) + " values do not fill shape " +
                    ShapeString(shape));
  impl_->shape = std::move(shape);
  impl_->values.assign(values.begin(), values.end());
  impl_->requires_grad = requires_grad;
}

int64_t Tensor::dim(int axis) const {
  const int r = rank();
  if (axis < 0) axis += r;
  if (axis < 0 || axis >= r) throw UsageError("Tensor::dim: axis out of range");
  return impl_->shape[axis];
}

double Tensor::item() const {
  if (size() != 1) throw UsageError("Tensor::item on shape " + ShapeString(shape()));
  return impl_->values[0];
}

std::span<double> Tensor::grad() const {
  if (impl_->grad.empty()) impl_->grad.assign(impl_->values.size(), 0.0);
  return impl_->grad;
}

void Tensor::ZeroGrad() {
  if (!impl_->grad.empty()) std::fill(impl_->grad.begin(), impl_->grad.end(), 0.0);
}

namespace {
std::pair<int64_t, int64_t> MatrixDims(const Shape &shape, int64_t total) {
  const int64_t cols = shape.empty() ? 1 : shape.back();
  return {cols == 0 ? 0 : total / cols, cols};
}
}  // namespace

MatrixMap Tensor::AsMatrix() {
  auto [r, c] = MatrixDims(impl_->shape, size());
  return MatrixMap(impl_->values.data(), r, c);
}

ConstMatrixMap Tensor::AsMatrix() const {
  auto [r, c] = MatrixDims(impl_->shape, size());
  return ConstMatrixMap(impl_->values.data(), r, c);
}

MatrixMap Tensor::GradAsMatrix() const {
  auto [r, c] = MatrixDims(impl_->shape, size());
  return MatrixMap(grad().data(), r, c);
}

Tensor Tensor::Clone() const {
  return Tensor(impl_->shape, std::vector<double>(impl_->values.begin(), impl_->values.end()),
                impl_->requires_grad);
}

void CheckFinite(const Tensor &t, const char *op) {
  for (double v : t.values())
    if (!std::isfinite(v)) throw NumericError(std::string("non-finite value produced by ") + op);
}

void Tape::Record(std::function<void()> backward) {
  if (record_) ops_.push_back(std::move(backward));
}

void Tape::Backward(Tensor loss) {
  if (consumed_) throw UsageError("Tape::Backward called twice without a new forward pass");
  if (!loss.defined() || loss.size() != 1)
    throw UsageError("Tape::Backward requires a scalar loss, got shape " +
                     (loss.defined() ? ShapeString(loss.shape()) : std::string("<undefined>")));
  if (!record_) throw UsageError("Tape::Backward on a non-recording tape");
  loss.grad()[0] = 1.0;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) (*it)();
  ops_.clear();
  consumed_ = true;
}

void Tape::Reset() {
  ops_.clear();
  consumed_ = false;
}

bool NeedsGrad(const Tape &tape, std::initializer_list<const Tensor *> inputs) {
  if (!tape.recording()) return false;
  return std::any_of(inputs.begin(), inputs.end(), [](const Tensor *t) {
    return t != nullptr && t->defined() && t->requires_grad();
  });
}

}  // namespace f0vc::nn
