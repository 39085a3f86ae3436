// include/f0vc/dsp/wav.h

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

#ifndef F0VC_DSP_WAV_H_
#define F0VC_DSP_WAV_H_

#include <string>

#include "f0vc/dsp/types.h"

namespace f0vc {

// Reads a mono RIFF/WAVE file (16-bit PCM or 32-bit float). 16-bit samples
// are scaled by 1/32768. If `target_rate` > 0 and differs from the file's
// rate, the signal is resampled. Throws DataError on missing files,
// unsupported encodings and multi-channel input.
Waveform LoadWav(const std::string &path, int target_rate = 0);

// Writes 16-bit PCM mono; samples are clipped to [-1, 1].
void SaveWav(const std::string &path, const Waveform &wave);

// Band-limited (windowed-sinc) sample-rate conversion. The output length is
// round(len * new_rate / old_rate).
Waveform Resample(const Waveform &wave, int new_rate);

}  // namespace f0vc

#endif  // F0VC_DSP_WAV_H_
