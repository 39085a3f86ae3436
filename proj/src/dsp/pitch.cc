// src/dsp/pitch.cc

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

#include "f0vc/dsp/pitch.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "f0vc/common/error.h"

namespace f0vc {

namespace {

constexpr double kOctaveTolerance = 0.9;
constexpr double kSilenceEnergy = 1e-10;  // mean squared amplitude

}  // namespace

F0Contour ExtractF0(const Waveform &wave, const AudioConfig &cfg) {
  if (static_cast<long>(wave.samples.size()) < cfg.window)
    throw DataError("waveform shorter than one analysis window (" +
                    std::to_string(wave.samples.size()) + " samples)");
  const int frames = cfg.NumFrames(static_cast<long>(wave.samples.size()));
  const int min_lag = std::max(2, static_cast<int>(std::floor(cfg.sample_rate / cfg.f0_max)));
  const int max_lag =
      std::min(cfg.window - 2, static_cast<int>(std::ceil(cfg.sample_rate / cfg.f0_min)));
  const int w = cfg.window;

  F0Contour contour(frames);
  std::vector<double> x(w), prefix(w + 1), r(max_lag + 2, 0.0);
  for (int t = 0; t < frames; ++t) {
    const size_t start = static_cast<size_t>(t) * cfg.hop;
    double mean = 0.0;
    for (int n = 0; n < w; ++n) mean += wave.samples[start + n];
    mean /= w;
    prefix[0] = 0.0;
    for (int n = 0; n < w; ++n) {
      x[n] = wave.samples[start + n] - mean;
      prefix[n + 1] = prefix[n] + x[n] * x[n];
    }
    if (prefix[w] < kSilenceEnergy * w) continue;

    // r[lag] for lag in [min_lag - 1, max_lag + 1].
    for (int lag = min_lag - 1; lag <= max_lag + 1; ++lag) {
      const int len = w - lag;
      double dot = 0.0;
      for (int n = 0; n < len; ++n) dot += x[n] * x[n + lag];
      const double e0 = prefix[len];
      const double e1 = prefix[w] - prefix[lag];
      const double denom = std::sqrt(e0 * e1);
      r[lag] = denom > 0.0 ? dot / denom : 0.0;
    }
    double best = -1.0;
    for (int lag = min_lag; lag <= max_lag; ++lag)
      if (r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1]) best = std::max(best, r[lag]);
    if (best < cfg.voicing_threshold) continue;

    int chosen = -1;
    for (int lag = min_lag; lag <= max_lag; ++lag) {
      if (r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1] && r[lag] >= kOctaveTolerance * best) {
        chosen = lag;
        break;
      }
    }
    const double ym = r[chosen - 1], y0 = r[chosen], yp = r[chosen + 1];
    const double curvature = ym - 2.0 * y0 + yp;
    double offset = curvature < 0.0 ? 0.5 * (ym - yp) / curvature : 0.0;
    offset = std::clamp(offset, -0.5, 0.5);
    const double f0 = cfg.sample_rate / (chosen + offset);
    contour[t].voiced = true;
    contour[t].f0_hz = std::clamp(f0, cfg.f0_min, cfg.f0_max);
  }
  return contour;
}

}  // namespace f0vc
