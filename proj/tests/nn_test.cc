// tests/nn_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "f0vc/common/error.h"
#include "f0vc/nn/adam.h"
#include "f0vc/nn/layers.h"
#include "f0vc/nn/ops.h"
#include "f0vc/nn/serialize.h"
#include "gradcheck.h"

using namespace f0vc;
using namespace f0vc::nn;
using f0vc::testing::GradCheck;
using f0vc::testing::RandomTensor;

namespace {

constexpr double kGradTolerance = 1e-3;
constexpr uint64_t kSeeds[] = {1, 2, 3, 4, 5};

double CheckLayer(const LayerSpec &spec, Shape input_shape, uint64_t seed, bool training = true) {
  Rng rng(seed);
  ParameterStore store;
  Layer layer(spec, store, "layer", rng);
  Tensor x = RandomTensor(input_shape, rng);
  std::vector<Tensor> wrt = store.Trainable();
  wrt.push_back(x);
  return GradCheck([&](Tape &tape) { return layer.Forward(tape, x, training); }, wrt, seed + 100);
}

}  // namespace

TEST_CASE("relu clamps negatives") {
  Tape tape(false);
  Tensor x({3}, {-1.0, 0.0, 2.0});
  Tensor y = Relu(tape, x);
  CHECK(y.values()[0] == 0.0);
  CHECK(y.values()[1] == 0.0);
  CHECK(y.values()[2] == 2.0);
}

TEST_CASE("conv5x1 with identity center tap reproduces its input") {
  Rng rng(7);
  ParameterStore store;
  Layer conv({LayerKind::kConv5x1, 1, 0, 1, 0}, store, "conv", rng);
  Tensor w = *store.Find("conv.weight");
  Tensor b = *store.Find("conv.bias");
  for (double &v : w.values()) v = 0.0;
  w.values()[2] = 1.0;
  b.values()[0] = 0.0;
  Tensor x = RandomTensor({2, 9, 1}, rng);
  Tape tape(false);
  Tensor y = conv.Forward(tape, x, false);
  REQUIRE(y.shape() == x.shape());
  for (int64_t i = 0; i < x.size(); ++i) CHECK(y.values()[i] == x.values()[i]);
}

TEST_CASE("batchnorm in training mode standardizes each channel") {
  Rng rng(3);
  ParameterStore store;
  Layer bn({LayerKind::kBatchNorm, 4}, store, "bn", rng);
  Tensor x = RandomTensor({2, 13, 4}, rng, 5.0);
  for (int64_t i = 0; i < x.size(); ++i) x.values()[i] += 3.0 * (i % 4);
  Tape tape(false);
  Tensor y = bn.Forward(tape, x, true);
  auto m = y.AsMatrix();
  for (int c = 0; c < 4; ++c) {
    const double mean = m.col(c).mean();
    const double var = (m.col(c).array() - mean).square().mean();
    CHECK(std::abs(mean) < 1e-5);
    CHECK(std::abs(var - 1.0) < 1e-5 * 10);  // eps = 1e-5 shrinks the variance slightly
  }
}

TEST_CASE("batchnorm running averages follow momentum 0.1") {
  Rng rng(3);
  ParameterStore store;
  Layer bn({LayerKind::kBatchNorm, 1}, store, "bn", rng);
  Tensor x({1, 4, 1}, {1.0, 2.0, 3.0, 4.0});
  Tape tape(false);
  bn.Forward(tape, x, true);
  CHECK(store.Find("bn.running_mean")->values()[0] == doctest::Approx(0.25));
  // unbiased batch variance 5/3
  CHECK(store.Find("bn.running_var")->values()[0] == doctest::Approx(0.9 + 0.1 * 5.0 / 3.0));
}

TEST_CASE("backward of sum gives ones and of squared norm gives 2x") {
  Rng rng(11);
  Tensor x = RandomTensor({1, 6}, rng);
  x.set_requires_grad(true);
  {
    Tape tape;
    tape.Backward(Sum(tape, x));
    for (double g : x.grad()) CHECK(g == 1.0);
  }
  x.ClearGrad();
  {
    Tape tape;
    Tensor zeros(x.shape());
    tape.Backward(SquaredError(tape, x, zeros));
    for (int64_t i = 0; i < x.size(); ++i)
      CHECK(x.grad()[i] == doctest::Approx(2.0 * x.values()[i]));
  }
}

TEST_CASE("backward rejects non-scalar losses and repeated calls") {
  Rng rng(1);
  Tensor x = RandomTensor({2, 3}, rng);
  x.set_requires_grad(true);
  Tape tape;
  Tensor y = Relu(tape, x);
  CHECK_THROWS_AS(tape.Backward(y), UsageError);
  Tensor loss = Sum(tape, y);
  tape.Backward(loss);
  CHECK_THROWS_AS(tape.Backward(loss), UsageError);
  tape.Reset();
  tape.Backward(Sum(tape, Relu(tape, x)));
}

TEST_CASE("shape mismatches name both shapes") {
  Tape tape(false);
  Tensor a({2, 3}), b({3, 2});
  try {
    Add(tape, a, b);
    FAIL("expected DataError");
  } catch (const DataError &e) {
    const std::string msg = e.what();
    CHECK(msg.find("[2, 3]") != std::string::npos);
    CHECK(msg.find("[3, 2]") != std::string::npos);
  }
}

TEST_CASE("non-finite outputs are hard errors") {
  Tape tape(false);
  Tensor a({1, 2}, {1.0, std::numeric_limits<double>::infinity()});
  Tensor b({1, 2});
  CHECK_THROWS_AS(Add(tape, a, b), NumericError);
}

TEST_CASE("losses: zero at equality, 10 for a unit offset over 10 elements") {
  Tape tape(false);
  Tensor a({1, 10}), b({1, 10});
  CHECK(SquaredError(tape, a, b).item() == 0.0);
  CHECK(AbsError(tape, a, b).item() == 0.0);
  for (double &v : a.values()) v = 1.0;
  CHECK(SquaredError(tape, a, b).item() == doctest::Approx(10.0));
  CHECK(AbsError(tape, a, b).item() == doctest::Approx(10.0));
  Tensor c({2, 5});
  CHECK_THROWS_AS(SquaredError(tape, a, c), DataError);
}

TEST_CASE("losses average over the batch axis") {
  Tape tape(false);
  Tensor a({2, 5}), b({2, 5});
  for (double &v : a.values()) v = 1.0;
  CHECK(SquaredError(tape, a, b).item() == doctest::Approx(5.0));
  CHECK(AbsError(tape, a, b).item() == doctest::Approx(5.0));
}

TEST_CASE("gradient suite: every layer kind passes finite differences on 5 seeds") {
  for (uint64_t seed : kSeeds) {
    CAPTURE(seed);
    CHECK(CheckLayer({LayerKind::kConv5x1, 3, 0, 4, 0}, {2, 7, 3}, seed) < kGradTolerance);
    CHECK(CheckLayer({LayerKind::kBatchNorm, 3}, {2, 6, 3}, seed, true) < kGradTolerance);
    CHECK(CheckLayer({LayerKind::kBatchNorm, 3}, {2, 6, 3}, seed, false) < kGradTolerance);
    CHECK(CheckLayer({LayerKind::kRelu, 5}, {2, 4, 5}, seed) < kGradTolerance);
    CHECK(CheckLayer({LayerKind::kLstm, 3, 0, 0, 4}, {2, 9, 3}, seed) < kGradTolerance);
    CHECK(CheckLayer({LayerKind::kBiLstm, 3, 0, 0, 3}, {2, 8, 3}, seed) < kGradTolerance);
    CHECK(CheckLayer({LayerKind::kLinear, 4, 3}, {2, 5, 4}, seed) < kGradTolerance);
  }
}

TEST_CASE("gradient suite: losses and plumbing ops") {
  for (uint64_t seed : kSeeds) {
    CAPTURE(seed);
    Rng rng(seed);
    Tensor a = RandomTensor({2, 6, 3}, rng), b = RandomTensor({2, 6, 3}, rng);
    Tensor mask({2, 6});
    for (int64_t i = 0; i < mask.size(); ++i) mask.values()[i] = i % 5 == 4 ? 0.0 : 1.0;
    CHECK(GradCheck([&](Tape &t) { return SquaredError(t, a, b, mask); }, {a, b}, seed) <
          kGradTolerance);
    CHECK(GradCheck([&](Tape &t) { return AbsError(t, a, b); }, {a, b}, seed) < kGradTolerance);
    CHECK(GradCheck([&](Tape &t) { return Concat(t, {a, Affine(t, b, 2.0, 1.0)}); }, {a, b}, seed) <
          kGradTolerance);
    Tensor c = RandomTensor({2, 32, 4}, rng);
    CHECK(GradCheck(
              [&](Tape &t) {
                Tensor sel = SelectFrames(t, c, {15, 31}, 0, 2);
                return RepeatFrames(t, sel, 16);
              },
              {c}, seed) < kGradTolerance);
    Tensor s1 = RandomTensor({1}, rng), s2 = RandomTensor({1}, rng);
    CHECK(GradCheck([&](Tape &t) { return WeightedSum(t, {s1, s2}, {1.0, 0.5}); }, {s1, s2}, seed) <
          kGradTolerance);
  }
}

TEST_CASE("LSTM gradients survive 24 time steps") {
  CHECK(CheckLayer({LayerKind::kLstm, 2, 0, 3, 3}, {1, 24, 2}, 42) < kGradTolerance);
}

TEST_CASE("BiLSTM halves equal forward LSTM and time-reversed LSTM") {
  Rng rng(5);
  ParameterStore bi_store;
  Layer bi({LayerKind::kBiLstm, 3, 0, 0, 4}, bi_store, "bi", rng);
  Tensor x = RandomTensor({2, 6, 3}, rng);
  Tape tape(false);
  Tensor y = bi.Forward(tape, x, false);
  const auto get = [&](const char *n) { return *bi_store.Find(n); };
  Tensor fwd = Lstm(tape, x, get("bi.fwd.w_ih"), get("bi.fwd.w_hh"), get("bi.fwd.bias"), false);

  std::vector<int64_t> reversed_index;
  for (int64_t t = 5; t >= 0; --t) reversed_index.push_back(t);
  Tensor x_rev = SelectFrames(tape, x, reversed_index, 0, 3);
  Tensor bwd_rev =
      Lstm(tape, x_rev, get("bi.bwd.w_ih"), get("bi.bwd.w_hh"), get("bi.bwd.bias"), false);
  Tensor bwd = SelectFrames(tape, bwd_rev, reversed_index, 0, 4);
  auto ym = y.AsMatrix();
  CHECK(ym.leftCols(4).isApprox(fwd.AsMatrix(), 1e-14));
  CHECK(ym.rightCols(4).isApprox(bwd.AsMatrix(), 1e-14));
}

TEST_CASE("forward and backward are bit-deterministic") {
  auto run = [] {
    Rng rng(99);
    ParameterStore store;
    Layer lstm({LayerKind::kLstm, 3, 0, 0, 5}, store, "l", rng);
    Tensor x = RandomTensor({2, 10, 3}, rng);
    Tape tape;
    tape.Backward(Sum(tape, lstm.Forward(tape, x, true)));
    std::vector<double> out;
    for (const auto &p : store.Trainable()) out.insert(out.end(), p.grad().begin(), p.grad().end());
    return out;
  };
  CHECK(run() == run());
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  Tensor p({3}, {1.0, -2.0, 0.5}, true);
  p.grad();
  Adam adam({p}, {});
  adam.Step();
  CHECK(p.values()[0] == 1.0);
  CHECK(p.values()[1] == -2.0);
  CHECK(p.values()[2] == 0.5);
}

TEST_CASE("adam: first step on p=1, grad=1 moves by lr") {
  Tensor p({1}, {1.0}, true);
  p.grad()[0] = 1.0;
  Adam adam({p}, {.lr = 1e-4});
  adam.Step();
  // m_hat = v_hat = 1 after bias correction.
  CHECK(p.values()[0] == doctest::Approx(1.0 - 1e-4 / (1.0 + 1e-8)).epsilon(1e-14));
  CHECK_FALSE(p.has_grad());
}

TEST_CASE("adam: identical parameters with identical gradients stay identical") {
  Tensor a({2}, {0.3, -0.7}, true), b({2}, {0.3, -0.7}, true);
  Adam adam({a, b}, {.lr = 1e-2});
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double g = rng.Normal();
      a.grad()[j] = g;
      b.grad()[j] = g;
    }
    adam.Step();
  }
  CHECK(a.values()[0] == b.values()[0]);
  CHECK(a.values()[1] == b.values()[1]);
}

TEST_CASE("adam: missing gradient is an error") {
  Tensor a({1}, {1.0}, true);
  Adam adam({a}, {});
  CHECK_THROWS_AS(adam.Step(), UsageError);
}

TEST_CASE("adam: global norm clipping caps the effective gradient") {
  Tensor a({2}, {0.0, 0.0}, true);
  a.grad()[0] = 30.0;
  a.grad()[1] = 40.0;
  Adam adam({a}, {.lr = 1.0, .clip_norm = 1.0});
  adam.Step();
  CHECK(adam.last_grad_norm() == doctest::Approx(50.0));
  // Adam normalizes the magnitude away, so direction is what survives.
  CHECK(a.values()[0] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(a.values()[1] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("tensor container round-trips and rejects corruption") {
  Rng rng(2);
  ParameterStore store;
  Layer lin({LayerKind::kLinear, 3, 2}, store, "lin", rng);
  Layer bn({LayerKind::kBatchNorm, 2}, store, "bn", rng);
  std::stringstream ss;
  WriteTensors(ss, store.entries());
  const std::string bytes = ss.str();

  std::istringstream in(bytes);
  auto loaded = ReadTensors(in);
  REQUIRE(loaded.size() == store.entries().size());
  CHECK(loaded[0].name == "lin.weight");
  CHECK_FALSE(loaded.back().trainable);

  Rng other(77);
  ParameterStore store2;
  Layer lin2({LayerKind::kLinear, 3, 2}, store2, "lin", other);
  Layer bn2({LayerKind::kBatchNorm, 2}, store2, "bn", other);
  RestoreInto(store2, loaded);
  for (size_t i = 0; i < store.entries().size(); ++i) {
    auto a = store.entries()[i].tensor.values();
    auto b = store2.entries()[i].tensor.values();
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }

  std::string bad = bytes;
  bad[0] = 'X';
  std::istringstream bad_in(bad);
  CHECK_THROWS_AS(ReadTensors(bad_in), DataError);
  std::istringstream cut(bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS_AS(ReadTensors(cut), DataError);
}
