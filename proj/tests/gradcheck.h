// tests/gradcheck.h

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

#ifndef F0VC_TESTS_GRADCHECK_H_
#define F0VC_TESTS_GRADCHECK_H_

#include <cmath>
#include <functional>
#include <vector>

#include "f0vc/common/rng.h"
#include "f0vc/nn/ops.h"

namespace f0vc::testing {

// Central finite-difference oracle. `build` runs a forward pass on the given
// tape and returns any tensor; the checked scalar is sum(output * probe) for
// a fixed random probe. Returns the largest norm-wise relative error
// ||analytic - numeric|| / max(||analytic||, ||numeric||) over `wrt`.
inline double GradCheck(const std::function<nn::Tensor(nn::Tape &)> &build,
                        std::vector<nn::Tensor> wrt, uint64_t seed, double h = 1e-4) {
  Rng rng(seed);
  nn::Tensor probe;
  auto loss_of = [&](nn::Tape &tape) {
    nn::Tensor out = build(tape);
    if (!probe.defined()) {
      probe = nn::Tensor(out.shape());
      for (double &v : probe.values()) v = rng.Uniform(-1.0, 1.0);
    }
    return nn::SumProduct(tape, out, probe);
  };

  for (auto &t : wrt) {
    t.set_requires_grad(true);
    t.ClearGrad();
  }
  {
    nn::Tape tape;
    tape.Backward(loss_of(tape));
  }
  double worst = 0.0;
  for (auto &t : wrt) {
    std::vector<double> analytic(t.grad().begin(), t.grad().end());
    std::vector<double> numeric(t.size());
    for (int64_t i = 0; i < t.size(); ++i) {
      const double saved = t.values()[i];
      t.values()[i] = saved + h;
      nn::Tape plus(false);
      const double lp = loss_of(plus).item();
      t.values()[i] = saved - h;
      nn::Tape minus(false);
      const double lm = loss_of(minus).item();
      t.values()[i] = saved;
      numeric[i] = (lp - lm) / (2.0 * h);
    }
    double diff = 0.0, na = 0.0, nn_ = 0.0;
    for (int64_t i = 0; i < t.size(); ++i) {
      diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
      na += analytic[i] * analytic[i];
      nn_ += numeric[i] * numeric[i];
    }
    const double scale = std::max({std::sqrt(na), std::sqrt(nn_), 1e-12});
    worst = std::max(worst, std::sqrt(diff) / scale);
    t.ClearGrad();
  }
  return worst;
}

inline nn::Tensor RandomTensor(nn::Shape shape, Rng &rng, double scale = 1.0) {
  nn::Tensor t(std::move(shape));
  for (double &v : t.values()) v = rng.Uniform(-scale, scale);
  return t;
}

}  // namespace f0vc::testing

#endif  // F0VC_TESTS_GRADCHECK_H_
