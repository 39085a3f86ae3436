// include/f0vc/dsp/griffin_lim.h

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

#ifndef F0VC_DSP_GRIFFIN_LIM_H_
#define F0VC_DSP_GRIFFIN_LIM_H_

#include "f0vc/dsp/audio_config.h"
#include "f0vc/dsp/types.h"

namespace f0vc {

// Maps log-mel frames back to a linear magnitude spectrogram through the
// pseudo-inverse of the filterbank, clamped at zero.
Matrix MelToLinear(const MelSpectrogram &mel, const AudioConfig &cfg);

// Griffin-Lim phase reconstruction from a log-mel spectrogram. The initial
// phase comes from a fixed seed, so the result is a pure function of the
// inputs. Throws UsageError if iters < 1.
Waveform GriffinLim(const MelSpectrogram &mel, const AudioConfig &cfg, int iters = 32);

}  // namespace f0vc

#endif  // F0VC_DSP_GRIFFIN_LIM_H_
