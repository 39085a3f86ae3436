// src/train/augment.cc

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

#include "f0vc/train/augment.h"

#include <algorithm>
#include <cmath>

#include "f0vc/common/error.h"

namespace f0vc {

namespace {

// Source position of output frame i when mapping n_in frames onto n_out.
double SourcePosition(int i, int n_in, int n_out) {
  if (n_in == 1 || n_out == 1) return 0.0;
  return static_cast<double>(i) * (n_in - 1) / (n_out - 1);
}

}  // namespace

Matrix StretchMel(const Matrix &mel, int out_frames) {
  const int n = static_cast<int>(mel.rows());
  if (n == 0 || out_frames < 1) throw DataError("StretchMel: empty input or output");
  if (out_frames == n) return mel;
  Matrix out(out_frames, mel.cols());
  for (int i = 0; i < out_frames; ++i) {
    const double pos = SourcePosition(i, n, out_frames);
    const int i0 = std::min(static_cast<int>(pos), n - 1);
    const int i1 = std::min(i0 + 1, n - 1);
    const double frac = pos - i0;
    out.row(i) = (1.0 - frac) * mel.row(i0) + frac * mel.row(i1);
  }
  return out;
}

F0Contour StretchF0(const F0Contour &f0, int out_frames) {
  const int n = static_cast<int>(f0.size());
  if (n == 0 || out_frames < 1) throw DataError("StretchF0: empty input or output");
  if (out_frames == n) return f0;
  F0Contour out(out_frames);
  for (int i = 0; i < out_frames; ++i) {
    const double pos = SourcePosition(i, n, out_frames);
    const int i0 = std::min(static_cast<int>(pos), n - 1);
    const int i1 = std::min(i0 + 1, n - 1);
    const double frac = pos - i0;
    const int nearest = frac < 0.5 ? i0 : i1;
    out[i].voiced = f0[nearest].voiced;
    if (f0[i0].voiced && f0[i1].voiced)
      out[i].f0_hz = (1.0 - frac) * f0[i0].f0_hz + frac * f0[i1].f0_hz;
    else
      out[i].f0_hz = f0[nearest].f0_hz;
  }
  return out;
}

AugmentParams SampleAugment(int frames, double frames_per_second, const TrainConfig &cfg,
                            Rng &rng) {
  if (frames < 1) throw DataError("SampleAugment: empty utterance");
  AugmentParams p;
  p.stretch = rng.Uniform(cfg.stretch_min, cfg.stretch_max);
  p.gain = rng.Uniform(cfg.gain_min, cfg.gain_max);
  const int min_crop =
      std::max(1, static_cast<int>(std::lround(cfg.crop_min_s * frames_per_second)));
  const int max_crop =
      std::max(min_crop, static_cast<int>(std::lround(cfg.crop_max_s * frames_per_second)));
  int stretched = std::max(1, static_cast<int>(std::lround(frames * p.stretch)));
  if (stretched < min_crop) {
    p.stretch = static_cast<double>(min_crop) / frames;
    stretched = std::max(1, static_cast<int>(std::lround(frames * p.stretch)));
  }
  p.crop_frames = std::min(static_cast<int>(rng.UniformInt(min_crop, max_crop)), stretched);
  p.crop_offset = static_cast<int>(rng.UniformInt(0, stretched - p.crop_frames));
  return p;
}

AugmentedExample ApplyAugment(const Matrix &mel, const F0Contour &f0, const AugmentParams &params,
                              int multiple) {
  if (mel.rows() != static_cast<Eigen::Index>(f0.size()))
    throw DataError("ApplyAugment: mel has " + std::to_string(mel.rows()) + " frames, F0 has " +
                    std::to_string(f0.size()));
  if (!(params.stretch > 0) || !(params.gain > 0)) throw UsageError("ApplyAugment: bad parameters");
  const int frames = static_cast<int>(mel.rows());
  const int stretched = std::max(1, static_cast<int>(std::lround(frames * params.stretch)));
  Matrix m = StretchMel(mel, stretched);
  F0Contour c = StretchF0(f0, stretched);
  m.array() += 0.5 * std::log(params.gain);

  int begin = 0, len = stretched;
  if (params.crop_frames > 0 && params.crop_frames < stretched) {
    if (params.crop_offset < 0 || params.crop_offset + params.crop_frames > stretched)
      throw UsageError("ApplyAugment: crop window outside the stretched utterance");
    begin = params.crop_offset;
    len = params.crop_frames;
  }
  const int padded = (len + multiple - 1) / multiple * multiple;
  AugmentedExample ex;
  ex.valid_frames = len;
  ex.mel.resize(padded, mel.cols());
  ex.mel.topRows(len) = m.middleRows(begin, len);
  for (int r = len; r < padded; ++r) ex.mel.row(r) = ex.mel.row(len - 1);
  ex.f0.assign(c.begin() + begin, c.begin() + begin + len);
  ex.f0.resize(padded, F0Frame{0.0, false});
  return ex;
}

}  // namespace f0vc
