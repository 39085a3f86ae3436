// include/f0vc/dsp/audio_config.h

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

#ifndef F0VC_DSP_AUDIO_CONFIG_H_
#define F0VC_DSP_AUDIO_CONFIG_H_

namespace f0vc {

// Analysis/synthesis parameters shared by every dsp operation. Frame t of
// every per-frame feature covers samples [t * hop, t * hop + window).
struct AudioConfig {
  int sample_rate = 16000;
  int fft_size = 1024;
  int hop = 256;
  int window = 1024;
  int mel_bins = 80;
  double mel_fmin = 90.0;
  double mel_fmax = 7600.0;
  double f0_min = 50.0;
  double f0_max = 600.0;
  double voicing_threshold = 0.45;
  double log_floor = 1e-5;

  // Throws UsageError when the invariants do not hold.
  void Validate() const;

  // Number of frames for a signal of `num_samples`; 0 if shorter than a window.
  int NumFrames(long num_samples) const {
    if (num_samples < window) return 0;
    return 1 + static_cast<int>((num_samples - window) / hop);
  }
  double FramesPerSecond() const { return static_cast<double>(sample_rate) / hop; }
};

}  // namespace f0vc

#endif  // F0VC_DSP_AUDIO_CONFIG_H_
