// include/f0vc/dsp/pitch.h

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

#ifndef F0VC_DSP_PITCH_H_
#define F0VC_DSP_PITCH_H_

#include "f0vc/dsp/audio_config.h"
#include "f0vc/dsp/types.h"

namespace f0vc {

// Normalized-autocorrelation pitch tracker.
//
// Each frame uses the same sample span as the mel analysis, so the contour
// has exactly as many frames as ComputeMelSpectrogram. Within a frame the
// normalized cross-correlation between the leading and lagged segments is
// evaluated for every lag in [sample_rate / f0_max, sample_rate / f0_min].
// The frame is voiced when the best peak reaches voicing_threshold; the
// reported lag is the shortest local peak within 10% of the best one (guards
// against period doubling), refined by parabolic interpolation.
F0Contour ExtractF0(const Waveform &wave, const AudioConfig &cfg);

}  // namespace f0vc

#endif  // F0VC_DSP_PITCH_H_
