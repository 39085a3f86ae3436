// include/f0vc/nn/tensor.h

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

#ifndef F0VC_NN_TENSOR_H_
#define F0VC_NN_TENSOR_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace f0vc::nn {

using Shape = std::vector<int64_t>;

std::string ShapeString(const Shape &shape);
int64_t NumElements(const Shape &shape);

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<RowMatrix>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;

// Dense row-major tensor with an optional gradient buffer. Copies share the
// underlying storage (handle semantics), which is what lets the tape refer
// to parameters and intermediates without owning them twice.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, bool requires_grad = false);
  Tensor(Shape shape, std::vector<double> values, bool requires_grad = false);

  bool defined() const { return impl_ != nullptr; }
  const Shape &shape() const { return impl_->shape; }
  int64_t dim(int axis) const;
  int rank() const { return static_cast<int>(impl_->shape.size()); }
  int64_t size() const { return static_cast<int64_t>(impl_->values.size()); }

  std::span<double> values() { return impl_->values; }
  std::span<const double> values() const { return impl_->values; }
  double item() const;

  bool requires_grad() const { return impl_->requires_grad; }
  void set_requires_grad(bool on) { impl_->requires_grad = on; }
  bool has_grad() const { return !impl_->grad.empty(); }
  // Allocates a zero gradient on first use. The gradient buffer belongs to
  // the shared storage, so it is writable through const handles.
  std::span<double> grad() const;
  void ZeroGrad();
  void ClearGrad() { impl_->grad.clear(); }

  // Views as a matrix whose last axis is the column axis.
  MatrixMap AsMatrix();
  ConstMatrixMap AsMatrix() const;
  MatrixMap GradAsMatrix() const;

  // Deep copy of the values only.
  Tensor Clone() const;
  bool SameStorage(const Tensor &other) const { return impl_ == other.impl_; }

 private:
  // Storage is aligned to Eigen's maximum alignment so that vectorized
  // reductions take the same path on every run, independent of where the
  // allocator happens to place the buffer.
  using Buffer = std::vector<double, Eigen::aligned_allocator<double>>;
  struct Impl {
    Shape shape;
    Buffer values;
    Buffer grad;
    bool requires_grad = false;
  };
  std::shared_ptr<Impl> impl_;
};

// Throws NumericError naming `op` if any value is NaN or infinite.
void CheckFinite(const Tensor &t, const char *op);

// Records backward closures of the forward ops run against it and replays
// them in reverse. A tape built with record=false is an inference context:
// ops run but nothing is kept.
class Tape {
 public:
  explicit Tape(bool record = true) : record_(record) {}
  Tape(const Tape &) = delete;
  Tape &operator=(const Tape &) = delete;

  bool recording() const { return record_; }
  void Record(std::function<void()> backward);

  // Seeds d(loss)/d(loss) = 1 and runs the recorded closures. The graph is
  // released afterwards; calling Backward again before a new forward pass
  // throws UsageError, as does a non-scalar loss.
  void Backward(Tensor loss);

  // Drops the recorded graph so the tape can host a new forward pass.
  void Reset();

  size_t num_ops() const { return ops_.size(); }

 private:
  bool record_;
  bool consumed_ = false;
  std::vector<std::function<void()>> ops_;
};

// True when the op output must be tracked on `tape`.
bool NeedsGrad(const Tape &tape, std::initializer_list<const Tensor *> inputs);

}  // namespace f0vc::nn

#endif  // F0VC_NN_TENSOR_H_
