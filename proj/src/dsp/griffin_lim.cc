// src/dsp/griffin_lim.cc

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

#include "f0vc/dsp/griffin_lim.h"

#include <cmath>
#include <numbers>

#include "f0vc/common/error.h"
#include "f0vc/common/rng.h"
#include "f0vc/dsp/spectral.h"

namespace f0vc {

namespace {
constexpr uint64_t kPhaseSeed = 0x6e1ffe11;
}  // namespace

Matrix MelToLinear(const MelSpectrogram &mel, const AudioConfig &cfg) {
  if (mel.NumBins() != cfg.mel_bins)
    throw DataError("MelToLinear: mel has " + std::to_string(mel.NumBins()) +
                    " bins, config expects " + std::to_string(cfg.mel_bins));
  const Matrix fb = MelFilterbank(cfg);
  const Matrix pinv = fb.completeOrthogonalDecomposition().pseudoInverse();
  const Matrix amp = mel.frames.array().exp().matrix();
  return (amp * pinv.transpose()).cwiseMax(0.0);
}

Waveform GriffinLim(const MelSpectrogram &mel, const AudioConfig &cfg, int iters) {
  if (iters < 1) throw UsageError("GriffinLim: iters must be >= 1");
  const Matrix mag = MelToLinear(mel, cfg);
  const int frames = static_cast<int>(mag.rows());
  const int bins = static_cast<int>(mag.cols());

  Rng rng(kPhaseSeed);
  ComplexMatrix spec(frames, bins);
  for (int t = 0; t < frames; ++t)
    for (int k = 0; k < bins; ++k)
      spec(t, k) = std::polar(mag(t, k), 2.0 * std::numbers::pi * rng.Uniform());

  std::vector<double> signal = Istft(spec, cfg);
  for (int it = 1; it < iters; ++it) {
    const ComplexMatrix est = Stft(signal, cfg);
    for (int t = 0; t < frames; ++t) {
      for (int k = 0; k < bins; ++k) {
        const double a = std::abs(est(t, k));
        spec(t, k) = a > 1e-12 ? mag(t, k) * est(t, k) / a : std::complex<double>(mag(t, k), 0.0);
      }
    }
    signal = Istft(spec, cfg);
  }
  Waveform out;
  out.sample_rate = cfg.sample_rate;
  out.samples = std::move(signal);
  for (double &s : out.samples) s = std::clamp(s, -1.0, 1.0);
  return out;
}

}  // namespace f0vc
