// include/f0vc/train/augment.h

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

#ifndef F0VC_TRAIN_AUGMENT_H_
#define F0VC_TRAIN_AUGMENT_H_

#include "f0vc/common/matrix.h"
#include "f0vc/common/rng.h"
#include "f0vc/dsp/types.h"
#include "f0vc/train/train_config.h"

namespace f0vc {

struct AugmentParams {
  double stretch = 1.0;
  double gain = 1.0;
  int crop_frames = 0;  // 0 keeps the whole stretched utterance
  int crop_offset = 0;
};

struct AugmentedExample {
  Matrix mel;            // padded to a multiple of 16 frames
  F0Contour f0;          // padded with unvoiced frames
  int valid_frames = 0;  // frames before padding
};

// Resamples T frames to round(T * r) by linear interpolation with both end
// frames kept in place. F0 follows the same time map; the voiced flag comes
// from the nearest source frame and the value is interpolated only between
// two voiced frames.
Matrix StretchMel(const Matrix &mel, int out_frames);
F0Contour StretchF0(const F0Contour &f0, int out_frames);

// Draws stretch, gain and crop for a T-frame utterance. Crop lengths are
// uniform over [crop_min_s, crop_max_s] in frames; a stretched utterance
// shorter than the minimum crop is stretched up to it.
AugmentParams SampleAugment(int frames, double frames_per_second, const TrainConfig &cfg, Rng &rng);

AugmentedExample ApplyAugment(const Matrix &mel, const F0Contour &f0, const AugmentParams &params,
                              int multiple = 16);

}  // namespace f0vc

#endif  // F0VC_TRAIN_AUGMENT_H_
