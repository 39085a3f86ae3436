// src/nn/ops.cc

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

#include "f0vc/nn/ops.h"

#include <cmath>
#include <string>

#include "f0vc/common/error.h"

namespace f0vc::nn {

namespace {

[[noreturn]] void ShapeMismatch(const char *op, const Shape &a, const Shape &b) {
  throw DataError(std::string(op) + ": shape mismatch " + ShapeString(a) + " vs " + ShapeString(b));
}

void RequireRank(const char *op, const Tensor &x, int rank) {
  if (x.rank() != rank)
    throw DataError(std::string(op) + ": expected rank " + std::to_string(rank) + " input, got " +
                    ShapeString(x.shape()));
}

Tensor MakeOutput(const Tape &tape, Shape shape, std::initializer_list<const Tensor *> inputs) {
  return Tensor(std::move(shape), NeedsGrad(tape, inputs));
}

using Eigen::Index;
using RowVecMap = Eigen::Map<const Eigen::RowVectorXd>;

inline double Sigmoid(double x) {
  return 1.0 / (1.0 + std::exp(-x));
}

}  // namespace

Tensor Linear(Tape &tape, const Tensor &x, const Tensor &w, const Tensor &b) {
  RequireRank("Linear", w, 2);
  if (x.shape().back() != w.dim(0)) ShapeMismatch("Linear", x.shape(), w.shape());
  if (b.defined() && (b.rank() != 1 || b.dim(0) != w.dim(1)))
    ShapeMismatch("Linear", w.shape(), b.shape());
  Shape out_shape = x.shape();
  out_shape.back() = w.dim(1);
  Tensor y = MakeOutput(tape, out_shape, {&x, &w, &b});
  auto ym = y.AsMatrix();
  ym.noalias() = x.AsMatrix() * w.AsMatrix();
  if (b.defined()) ym.rowwise() += RowVecMap(b.values().data(), b.dim(0));
  CheckFinite(y, "Linear");
  if (y.requires_grad()) {
    tape.Record([x, w, b, y]() mutable {
      if (!y.has_grad()) return;
      auto gy = y.GradAsMatrix();
      if (w.requires_grad()) w.GradAsMatrix().noalias() += x.AsMatrix().transpose() * gy;
      if (b.defined() && b.requires_grad())
        MatrixMap(b.grad().data(), 1, b.dim(0)) += gy.colwise().sum();
      if (x.requires_grad()) x.GradAsMatrix().noalias() += gy * w.AsMatrix().transpose();
    });
  }
  return y;
}

Tensor Conv1d(Tape &tape, const Tensor &x, const Tensor &w, const Tensor &b) {
  RequireRank("Conv1d", x, 3);
  RequireRank("Conv1d", w, 2);
  const int64_t batch = x.dim(0), frames = x.dim(1), cin = x.dim(2);
  if (w.dim(0) % cin != 0) ShapeMismatch("Conv1d", x.shape(), w.shape());
  const int64_t kernel = w.dim(0) / cin, cout = w.dim(1), pad = kernel / 2;
  if (b.defined() && (b.rank() != 1 || b.dim(0) != cout))
    ShapeMismatch("Conv1d", w.shape(), b.shape());

  RowMatrix col = RowMatrix::Zero(batch * frames, kernel * cin);
  auto xm = x.AsMatrix();
  for (int64_t n = 0; n < batch; ++n)
    for (int64_t t = 0; t < frames; ++t)
      for (int64_t k = 0; k < kernel; ++k) {
        const int64_t src = t + k - pad;
        if (src < 0 || src >= frames) continue;
        col.block(n * frames + t, k * cin, 1, cin) = xm.row(n * frames + src);
      }
  Tensor y = MakeOutput(tape, {batch, frames, cout}, {&x, &w, &b});
  auto ym = y.AsMatrix();
  ym.noalias() = col * w.AsMatrix();
  if (b.defined()) ym.rowwise() += RowVecMap(b.values().data(), cout);
  CheckFinite(y, "Conv1d");
  if (y.requires_grad()) {
    tape.Record([x, w, b, y, col = std::move(col), batch, frames, cin, kernel, pad]() mutable {
      if (!y.has_grad()) return;
      auto gy = y.GradAsMatrix();
      if (w.requires_grad()) w.GradAsMatrix().noalias() += col.transpose() * gy;
      if (b.defined() && b.requires_grad())
        MatrixMap(b.grad().data(), 1, b.dim(0)) += gy.colwise().sum();
      if (x.requires_grad()) {
        const RowMatrix gcol = gy * w.AsMatrix().transpose();
        auto gx = x.GradAsMatrix();
        for (int64_t n = 0; n < batch; ++n)
          for (int64_t t = 0; t < frames; ++t)
            for (int64_t k = 0; k < kernel; ++k) {
              const int64_t src = t + k - pad;
              if (src < 0 || src >= frames) continue;
              gx.row(n * frames + src) += gcol.block(n * frames + t, k * cin, 1, cin);
            }
      }
    });
  }
  return y;
}

Tensor Relu(Tape &tape, const Tensor &x) {
  Tensor y = MakeOutput(tape, x.shape(), {&x});
  auto xv = x.values();
  auto yv = y.values();
  for (int64_t i = 0; i < x.size(); ++i) yv[i] = xv[i] > 0.0 ? xv[i] : 0.0;
  CheckFinite(y, "Relu");
  if (y.requires_grad()) {
    tape.Record([x, y]() mutable {
      if (!y.has_grad()) return;
      auto gy = y.grad();
      auto gx = x.grad();
      auto xv = x.values();
      for (int64_t i = 0; i < x.size(); ++i)
        if (xv[i] > 0.0) gx[i] += gy[i];
    });
  }
  return y;
}

Tensor Add(Tape &tape, const Tensor &a, const Tensor &b) {
  if (a.shape() != b.shape()) ShapeMismatch("Add", a.shape(), b.shape());
  Tensor y = MakeOutput(tape, a.shape(), {&a, &b});
  auto av = a.values(), bv = b.values();
  auto yv = y.values();
  for (int64_t i = 0; i < a.size(); ++i) yv[i] = av[i] + bv[i];
  CheckFinite(y, "Add");
  if (y.requires_grad()) {
    tape.Record([a, b, y]() mutable {
      if (!y.has_grad()) return;
      auto gy = y.grad();
      for (const Tensor *t : {&a, &b}) {
        if (!t->requires_grad()) continue;
        auto g = t->grad();
        for (int64_t i = 0; i < t->size(); ++i) g[i] += gy[i];
      }
    });
  }
  return y;
}

Tensor Affine(Tape &tape, const Tensor &x, double scale, double shift) {
  Tensor y = MakeOutput(tape, x.shape(), {&x});
  auto xv = x.values();
  auto yv = y.values();
  for (int64_t i = 0; i < x.size(); ++i) yv[i] = scale * xv[i] + shift;
  CheckFinite(y, "Affine");
  if (y.requires_grad()) {
    tape.Record([x, y, scale]() mutable {
      if (!y.has_grad()) return;
      auto gy = y.grad();
      auto gx = x.grad();
      for (int64_t i = 0; i < x.size(); ++i) gx[i] += scale * gy[i];
    });
  }
  return y;
}

Tensor Concat(Tape &tape, const std::vector<Tensor> &parts) {
  if (parts.empty()) throw DataError("Concat: no inputs");
  Shape lead = parts[0].shape();
  lead.pop_back();
  int64_t width = 0;
  bool needs = false;
  for (const Tensor &p : parts) {
    Shape l = p.shape();
    l.pop_back();
    if (l != lead) ShapeMismatch("Concat", parts[0].shape(), p.shape());
    width += p.shape().back();
    needs = needs || p.requires_grad();
  }
  Shape out_shape = lead;
  out_shape.push_back(width);
  Tensor y(out_shape, needs && tape.recording());
  auto ym = y.AsMatrix();
  int64_t offset = 0;
  for (const Tensor &p : parts) {
    const int64_t w = p.shape().back();
    ym.middleCols(offset, w) = p.AsMatrix();
    offset += w;
  }
  if (y.requires_grad()) {
    tape.Record([parts, y]() mutable {
      if (!y.has_grad()) return;
      auto gy = y.GradAsMatrix();
      int64_t offset = 0;
      for (const Tensor &p : parts) {
        const int64_t w = p.shape().back();
        if (p.requires_grad()) p.GradAsMatrix() += gy.middleCols(offset, w);
        offset += w;
      }
    });
  }
  return y;
}

Tensor BatchNorm(Tape &tape, const Tensor &x, const Tensor &gamma, const Tensor &beta,
                 BatchNormState &state, bool training, double momentum, double eps) {
  const int64_t channels = x.shape().back();
  for (const Tensor *p : {&gamma, &beta, static_cast<const Tensor *>(&state.running_mean),
                          static_cast<const Tensor *>(&state.running_var)})
    if (p->rank() != 1 || p->dim(0) != channels) ShapeMismatch("BatchNorm", x.shape(), p->shape());
  auto xm = x.AsMatrix();
  const int64_t rows = xm.rows();
  if (training && rows < 2)
    throw DataError("BatchNorm: training mode needs at least two positions");

  Eigen::RowVectorXd mean(channels), inv_std(channels);
  if (training) {
    mean = xm.colwise().mean();
    const Eigen::RowVectorXd var =
        (xm.rowwise() - mean).array().square().colwise().sum() / static_cast<double>(rows);
    inv_std = (var.array() + eps).rsqrt();
    auto rm = state.running_mean.values();
    auto rv = state.running_var.values();
    const double unbias = static_cast<double>(rows) / (rows - 1);
    for (int64_t c = 0; c < channels; ++c) {
      rm[c] = (1.0 - momentum) * rm[c] + momentum * mean[c];
      rv[c] = (1.0 - momentum) * rv[c] + momentum * var[c] * unbias;
    }
  } else {
    auto rm = state.running_mean.values();
    auto rv = state.running_var.values();
    for (int64_t c = 0; c < channels; ++c) {
      mean[c] = rm[c];
      inv_std[c] = 1.0 / std::sqrt(rv[c] + eps);
    }
  }
  RowMatrix xhat = (xm.rowwise() - mean).array().rowwise() * inv_std.array();
  Tensor y = MakeOutput(tape, x.shape(), {&x, &gamma, &beta});
  const RowVecMap g(gamma.values().data(), channels);
  const RowVecMap bt(beta.values().data(), channels);
  y.AsMatrix() = (xhat.array().rowwise() * g.array()).rowwise() + bt.array();
  CheckFinite(y, "BatchNorm");
  if (y.requires_grad()) {
    tape.Record(
        [x, gamma, beta, y, xhat = std::move(xhat), inv_std, training, rows, channels]() mutable {
          if (!y.has_grad()) return;
          auto gy = y.GradAsMatrix();
          if (gamma.requires_grad())
            MatrixMap(gamma.grad().data(), 1, channels) +=
                (gy.array() * xhat.array()).colwise().sum().matrix();
          if (beta.requires_grad())
            MatrixMap(beta.grad().data(), 1, channels) += gy.colwise().sum();
          if (!x.requires_grad()) return;
          const RowVecMap g(gamma.values().data(), channels);
          const RowMatrix gxhat = gy.array().rowwise() * g.array();
          auto gx = x.GradAsMatrix();
          if (training) {
            const Eigen::RowVectorXd sum_g = gxhat.colwise().sum();
            const Eigen::RowVectorXd sum_gx = (gxhat.array() * xhat.array()).colwise().sum();
            const double n = static_cast<double>(rows);
            gx.array() += ((gxhat.array() * n).rowwise() - sum_g.array() -
                           (xhat.array().rowwise() * sum_gx.array()))
                              .rowwise() *
                          (inv_std.array() / n);
          } else {
            gx.array() += gxhat.array().rowwise() * inv_std.array();
          }
        });
  }
  return y;
}

Tensor Lstm(Tape &tape, const Tensor &x, const Tensor &w_ih, const Tensor &w_hh, const Tensor &b,
            bool reverse) {
  RequireRank("Lstm", x, 3);
  const int64_t batch = x.dim(0), frames = x.dim(1), in = x.dim(2);
  const int64_t hidden = w_hh.dim(0);
  if (w_ih.rank() != 2 || w_ih.dim(0) != in || w_ih.dim(1) != 4 * hidden)
    ShapeMismatch("Lstm", x.shape(), w_ih.shape());
  if (w_hh.rank() != 2 || w_hh.dim(1) != 4 * hidden)
    ShapeMismatch("Lstm", w_ih.shape(), w_hh.shape());
  if (b.rank() != 1 || b.dim(0) != 4 * hidden) ShapeMismatch("Lstm", w_hh.shape(), b.shape());

  const int64_t rows = batch * frames;
  // Post-activation gates, cell states and tanh(cell) per (batch, frame).
  RowMatrix gates(rows, 4 * hidden);
  gates.noalias() = x.AsMatrix() * w_ih.AsMatrix();
  gates.rowwise() += RowVecMap(b.values().data(), 4 * hidden);
  RowMatrix cell(rows, hidden), tanh_cell(rows, hidden);
  Tensor y = MakeOutput(tape, {batch, frames, hidden}, {&x, &w_ih, &w_hh, &b});
  auto hm = y.AsMatrix();
  const auto whh = w_hh.AsMatrix();

  RowMatrix h_prev = RowMatrix::Zero(batch, hidden), c_prev = RowMatrix::Zero(batch, hidden);
  RowMatrix rec(batch, 4 * hidden);
  for (int64_t s = 0; s < frames; ++s) {
    const int64_t t = reverse ? frames - 1 - s : s;
    rec.noalias() = h_prev * whh;
    for (int64_t n = 0; n < batch; ++n) {
      const int64_t r = n * frames + t;
      double *g = gates.row(r).data();
      const double *rr = rec.row(n).data();
      for (int64_t j = 0; j < hidden; ++j) {
        const double i_g = Sigmoid(g[j] + rr[j]);
        const double f_g = Sigmoid(g[hidden + j] + rr[hidden + j]);
        const double c_g = std::tanh(g[2 * hidden + j] + rr[2 * hidden + j]);
        const double o_g = Sigmoid(g[3 * hidden + j] + rr[3 * hidden + j]);
        g[j] = i_g;
        g[hidden + j] = f_g;
        g[2 * hidden + j] = c_g;
        g[3 * hidden + j] = o_g;
        const double c = f_g * c_prev(n, j) + i_g * c_g;
        const double tc = std::tanh(c);
        cell(r, j) = c;
        tanh_cell(r, j) = tc;
        hm(r, j) = o_g * tc;
        c_prev(n, j) = c;
        h_prev(n, j) = o_g * tc;
      }
    }
  }
  CheckFinite(y, "Lstm");
  if (y.requires_grad()) {
    tape.Record([x, w_ih, w_hh, b, y, gates = std::move(gates), cell = std::move(cell),
                 tanh_cell = std::move(tanh_cell), batch, frames, hidden, reverse]() mutable {
      if (!y.has_grad()) return;
      const int64_t rows = batch * frames;
      auto gy = y.GradAsMatrix();
      const auto hm = y.AsMatrix();
      const auto whh = w_hh.AsMatrix();
      RowMatrix dpre(rows, 4 * hidden);
      RowMatrix dh_rec = RowMatrix::Zero(batch, hidden), dc_rec = RowMatrix::Zero(batch, hidden);
      RowMatrix dstep(batch, 4 * hidden);
      for (int64_t s = frames - 1; s >= 0; --s) {
        const int64_t t = reverse ? frames - 1 - s : s;
        const int64_t tp = reverse ? t + 1 : t - 1;
        for (int64_t n = 0; n < batch; ++n) {
          const int64_t r = n * frames + t;
          const double *g = gates.row(r).data();
          double *d = dpre.row(r).data();
          for (int64_t j = 0; j < hidden; ++j) {
            const double i_g = g[j], f_g = g[hidden + j], c_g = g[2 * hidden + j],
                         o_g = g[3 * hidden + j];
            const double tc = tanh_cell(r, j);
            const double c_before = s > 0 ? cell(n * frames + tp, j) : 0.0;
            const double dh = gy(r, j) + dh_rec(n, j);
            const double d_o = dh * tc;
            const double dc = dc_rec(n, j) + dh * o_g * (1.0 - tc * tc);
            d[j] = dc * c_g * i_g * (1.0 - i_g);
            d[hidden + j] = dc * c_before * f_g * (1.0 - f_g);
            d[2 * hidden + j] = dc * i_g * (1.0 - c_g * c_g);
            d[3 * hidden + j] = d_o * o_g * (1.0 - o_g);
            dc_rec(n, j) = dc * f_g;
          }
          dstep.row(n) = dpre.row(r);
        }
        if (s > 0) dh_rec.noalias() = dstep * whh.transpose();
      }
      if (w_hh.requires_grad()) {
        // Previous hidden state per row, zero at the sequence start.
        RowMatrix hprev = RowMatrix::Zero(rows, hidden);
        for (int64_t n = 0; n < batch; ++n)
          for (int64_t s = 1; s < frames; ++s) {
            const int64_t t = reverse ? frames - 1 - s : s;
            const int64_t tp = reverse ? t + 1 : t - 1;
            hprev.row(n * frames + t) = hm.row(n * frames + tp);
          }
        w_hh.GradAsMatrix().noalias() += hprev.transpose() * dpre;
      }
      if (w_ih.requires_grad()) w_ih.GradAsMatrix().noalias() += x.AsMatrix().transpose() * dpre;
      if (b.requires_grad()) MatrixMap(b.grad().data(), 1, 4 * hidden) += dpre.colwise().sum();
      if (x.requires_grad()) x.GradAsMatrix().noalias() += dpre * w_ih.AsMatrix().transpose();
    });
  }
  return y;
}

Tensor SelectFrames(Tape &tape, const Tensor &x, const std::vector<int64_t> &frames,
                    int64_t channel_begin, int64_t channel_end) {
  RequireRank("SelectFrames", x, 3);
  const int64_t batch = x.dim(0), len = x.dim(1), width = x.dim(2);
  if (channel_begin < 0 || channel_end > width || channel_begin >= channel_end)
    throw DataError("SelectFrames: channel range out of bounds for " + ShapeString(x.shape()));
  for (int64_t f : frames)
    if (f < 0 || f >= len) throw DataError("SelectFrames: frame index out of range");
  const int64_t out_frames = static_cast<int64_t>(frames.size());
  const int64_t out_width = channel_end - channel_begin;
  Tensor y = MakeOutput(tape, {batch, out_frames, out_width}, {&x});
  auto xm = x.AsMatrix();
  auto ym = y.AsMatrix();
  for (int64_t n = 0; n < batch; ++n)
    for (int64_t j = 0; j < out_frames; ++j)
      ym.row(n * out_frames + j) = xm.block(n * len + frames[j], channel_begin, 1, out_width);
  if (y.requires_grad()) {
    tape.Record([x, y, frames, batch, len, out_frames, out_width, channel_begin]() mutable {
      if (!y.has_grad()) return;
      auto gy = y.GradAsMatrix();
      auto gx = x.GradAsMatrix();
      for (int64_t n = 0; n < batch; ++n)
        for (int64_t j = 0; j < out_frames; ++j)
          gx.block(n * len + frames[j], channel_begin, 1, out_width) += gy.row(n * out_frames + j);
    });
  }
  return y;
}

Tensor RepeatFrames(Tape &tape, const Tensor &x, int64_t factor) {
  RequireRank("RepeatFrames", x, 3);
  if (factor < 1) throw DataError("RepeatFrames: factor must be >= 1");
  const int64_t batch = x.dim(0), len = x.dim(1), width = x.dim(2);
  Tensor y = MakeOutput(tape, {batch, len * factor, width}, {&x});
  auto xm = x.AsMatrix();
  auto ym = y.AsMatrix();
  for (int64_t n = 0; n < batch; ++n)
    for (int64_t k = 0; k < len; ++k)
      for (int64_t r = 0; r < factor; ++r) ym.row((n * len + k) * factor + r) = xm.row(n * len + k);
  if (y.requires_grad()) {
    tape.Record([x, y, batch, len, factor]() mutable {
      if (!y.has_grad()) return;
      auto gy = y.GradAsMatrix();
      auto gx = x.GradAsMatrix();
      for (int64_t n = 0; n < batch; ++n)
        for (int64_t k = 0; k < len; ++k)
          for (int64_t r = 0; r < factor; ++r)
            gx.row(n * len + k) += gy.row((n * len + k) * factor + r);
    });
  }
  return y;
}

Tensor SquaredError(Tape &tape, const Tensor &a, const Tensor &b, const Tensor &mask) {
  if (a.shape() != b.shape()) ShapeMismatch("SquaredError", a.shape(), b.shape());
  if (a.rank() < 1 || a.dim(0) < 1) throw DataError("SquaredError: empty batch");
  const int64_t batch = a.dim(0);
  int64_t inner = 1;  // elements per mask entry
  if (mask.defined()) {
    if (a.rank() != 3 || mask.rank() != 2 || mask.dim(0) != a.dim(0) || mask.dim(1) != a.dim(1))
      ShapeMismatch("SquaredError(mask)", a.shape(), mask.shape());
    inner = a.dim(2);
  }
  auto av = a.values(), bv = b.values();
  double sum = 0.0;
  for (int64_t i = 0; i < a.size(); ++i) {
    const double w = mask.defined() ? mask.values()[i / inner] : 1.0;
    const double d = av[i] - bv[i];
    sum += w * d * d;
  }
  Tensor y = MakeOutput(tape, {1}, {&a, &b});
  y.values()[0] = sum / batch;
  CheckFinite(y, "SquaredError");
  if (y.requires_grad()) {
    tape.Record([a, b, mask, y, batch, inner]() mutable {
      if (!y.has_grad()) return;
      const double scale = 2.0 * y.grad()[0] / batch;
      auto av = a.values(), bv = b.values();
      for (int64_t i = 0; i < a.size(); ++i) {
        const double w = mask.defined() ? mask.values()[i / inner] : 1.0;
        const double g = scale * w * (av[i] - bv[i]);
        if (a.requires_grad()) a.grad()[i] += g;
        if (b.requires_grad()) b.grad()[i] -= g;
      }
    });
  }
  return y;
}

Tensor AbsError(Tape &tape, const Tensor &a, const Tensor &b) {
  if (a.shape() != b.shape()) ShapeMismatch("AbsError", a.shape(), b.shape());
  if (a.rank() < 1 || a.dim(0) < 1) throw DataError("AbsError: empty batch");
  const int64_t batch = a.dim(0);
  auto av = a.values(), bv = b.values();
  double sum = 0.0;
  for (int64_t i = 0; i < a.size(); ++i) sum += std::abs(av[i] - bv[i]);
  Tensor y = MakeOutput(tape, {1}, {&a, &b});
  y.values()[0] = sum / batch;
  CheckFinite(y, "AbsError");
  if (y.requires_grad()) {
    tape.Record([a, b, y, batch]() mutable {
      if (!y.has_grad()) return;
      const double scale = y.grad()[0] / batch;
      auto av = a.values(), bv = b.values();
      for (int64_t i = 0; i < a.size(); ++i) {
        const double d = av[i] - bv[i];
        const double g = d > 0.0 ? scale : (d < 0.0 ? -scale : 0.0);
        if (a.requires_grad()) a.grad()[i] += g;
        if (b.requires_grad()) b.grad()[i] -= g;
      }
    });
  }
  return y;
}

Tensor SumProduct(Tape &tape, const Tensor &x, const Tensor &weights) {
  if (x.shape() != weights.shape()) ShapeMismatch("SumProduct", x.shape(), weights.shape());
  auto xv = x.values(), wv = weights.values();
  double sum = 0.0;
  for (int64_t i = 0; i < x.size(); ++i) sum += xv[i] * wv[i];
  Tensor y = MakeOutput(tape, {1}, {&x, &weights});
  y.values()[0] = sum;
  CheckFinite(y, "SumProduct");
  if (y.requires_grad()) {
    tape.Record([x, weights, y]() mutable {
      if (!y.has_grad()) return;
      const double gy = y.grad()[0];
      auto xv = x.values(), wv = weights.values();
      for (int64_t i = 0; i < x.size(); ++i) {
        if (x.requires_grad()) x.grad()[i] += gy * wv[i];
        if (weights.requires_grad()) weights.grad()[i] += gy * xv[i];
      }
    });
  }
  return y;
}

Tensor Sum(Tape &tape, const Tensor &x) {
  Tensor ones(x.shape());
  for (double &v : ones.values()) v = 1.0;
  return SumProduct(tape, x, ones);
}

Tensor WeightedSum(Tape &tape, const std::vector<Tensor> &terms,
                   const std::vector<double> &weights) {
  if (terms.size() != weights.size()) throw DataError("WeightedSum: term/weight count mismatch");
  double sum = 0.0;
  bool needs = false;
  for (size_t i = 0; i < terms.size(); ++i) {
    sum += weights[i] * terms[i].item();
    needs = needs || terms[i].requires_grad();
  }
  Tensor y({1}, needs && tape.recording());
  y.values()[0] = sum;
  CheckFinite(y, "WeightedSum");
  if (y.requires_grad()) {
    tape.Record([terms, weights, y]() mutable {
      if (!y.has_grad()) return;
      for (size_t i = 0; i < terms.size(); ++i)
        if (terms[i].requires_grad()) terms[i].grad()[0] += weights[i] * y.grad()[0];
    });
  }
  return y;
}

}  // namespace f0vc::nn
