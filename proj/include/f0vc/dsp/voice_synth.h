// include/f0vc/dsp/voice_synth.h

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

#ifndef F0VC_DSP_VOICE_SYNTH_H_
#define F0VC_DSP_VOICE_SYNTH_H_

#include <string>
#include <vector>

#include "f0vc/common/rng.h"
#include "f0vc/dsp/types.h"

namespace f0vc {

// Source-filter description of a synthetic talker. The toy corpus uses a
// handful of these in place of recorded speakers.
struct VoiceProfile {
  std::string id;
  double f0_mean_hz = 120.0;
  double log_f0_std = 0.12;    // spread of the intonation contour in log-Hz
  double formant_scale = 1.0;  // vocal-tract length factor
  double tilt = 1.0;           // harmonic amplitude falls as k^-tilt
  double breath = 0.02;        // aspiration noise mixed into voiced excitation
};

// The four talkers of the default toy corpus: two low-pitched, two
// high-pitched, each with its own vocal-tract scale.
std::vector<VoiceProfile> DefaultToyVoices();

struct SynthResult {
  Waveform wave;
  std::vector<double> f0_hz;  // per sample, 0 where unvoiced
};

// Renders a random syllable sequence (fricative onsets, vowels, nasal codas,
// pauses) with a smooth random intonation contour. Content is drawn fresh
// for every call.
SynthResult SynthesizeUtterance(const VoiceProfile &voice, double duration_s, Rng &rng,
                                int sample_rate = 16000);

// Pure tone helper used by tests and tools.
Waveform SineWave(double freq_hz, double duration_s, double amplitude = 0.5,
                  int sample_rate = 16000);

}  // namespace f0vc

#endif  // F0VC_DSP_VOICE_SYNTH_H_
