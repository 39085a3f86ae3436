// include/f0vc/train/loss.h

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

#ifndef F0VC_TRAIN_LOSS_H_
#define F0VC_TRAIN_LOSS_H_

#include "f0vc/nn/ops.h"

namespace f0vc {

struct LossTerms {
  nn::Tensor total;
  nn::Tensor mel_pre;
  nn::Tensor mel_post;
  nn::Tensor code;
};

// mse(mel, mel_pre) + mse(mel, mel_post) + lambda * l1(code_true, code_recon).
// The mel terms sum over unmasked frames and divide by the batch size; the
// code term sums over all code rows. mask is [B, T] or undefined.
LossTerms ReconLoss(nn::Tape &tape, const nn::Tensor &mel, const nn::Tensor &mel_pre,
                    const nn::Tensor &mel_post, const nn::Tensor &code_true,
                    const nn::Tensor &code_recon, double lambda, const nn::Tensor &mask = {});

}  // namespace f0vc

#endif  // F0VC_TRAIN_LOSS_H_
