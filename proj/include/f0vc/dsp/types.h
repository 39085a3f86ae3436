// include/f0vc/dsp/types.h

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

#ifndef F0VC_DSP_TYPES_H_
#define F0VC_DSP_TYPES_H_

#include <vector>

#include "f0vc/common/matrix.h"

namespace f0vc {

struct Waveform {
  std::vector<double> samples;  // in [-1, 1]
  int sample_rate = 16000;

  double Duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// T x mel_bins matrix of natural-log mel amplitudes.
struct MelSpectrogram {
  Matrix frames;

  int NumFrames() const { return static_cast<int>(frames.rows()); }
  int NumBins() const { return static_cast<int>(frames.cols()); }
};

struct F0Frame {
  double f0_hz = 0.0;  // meaningless when !voiced
  bool voiced = false;
};

using F0Contour = std::vector<F0Frame>;

inline int CountVoiced(const F0Contour &contour) {
  int n = 0;
  for (const auto &f : contour) n += f.voiced ? 1 : 0;
  return n;
}

}  // namespace f0vc

#endif  // F0VC_DSP_TYPES_H_
