// src/train/loss.cc

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

#include "f0vc/train/loss.h"

namespace f0vc {

LossTerms ReconLoss(nn::Tape &tape, const nn::Tensor &mel, const nn::Tensor &mel_pre,
                    const nn::Tensor &mel_post, const nn::Tensor &code_true,
                    const nn::Tensor &code_recon, double lambda, const nn::Tensor &mask) {
  LossTerms t;
  t.mel_pre = nn::SquaredError(tape, mel_pre, mel, mask);
  t.mel_post = nn::SquaredError(tape, mel_post, mel, mask);
  t.code = nn::AbsError(tape, code_recon, code_true);
  t.total = nn::WeightedSum(tape, {t.mel_pre, t.mel_post, t.code}, {1.0, 1.0, lambda});
  return t;
}

}  // namespace f0vc
