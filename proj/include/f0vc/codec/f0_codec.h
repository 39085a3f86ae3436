// include/f0vc/codec/f0_codec.h

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

#ifndef F0VC_CODEC_F0_CODEC_H_
#define F0VC_CODEC_F0_CODEC_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "f0vc/common/matrix.h"
#include "f0vc/dsp/types.h"

namespace f0vc {

// Mean and standard deviation of a speaker's voiced log-F0 (natural log).
struct SpeakerF0Stats {
  double mu = 0.0;
  double sigma = 1.0;
  int64_t n_frames = 0;

  static constexpr int64_t kMinFrames = 100;

  // Throws DataError unless sigma > 0 and n_frames >= kMinFrames.
  void Validate() const;
};

// Conditioning bins: 0..255 carry pitch, 256 marks an unvoiced frame.
inline constexpr int kPitchBins = 256;
inline constexpr int kUnvoicedBin = 256;
inline constexpr int kF0Classes = 257;

using QuantizedF0 = std::vector<int>;

// Statistics over the voiced frames of all contours. Throws DataError when
// fewer than kMinFrames voiced frames exist or the spread is zero.
SpeakerF0Stats ComputeStats(const std::vector<F0Contour> &contours);

// (log_f0 - mu) / (4 sigma), unclamped.
double Normalize(double log_f0, const SpeakerF0Stats &stats);

// Voiced: u = clamp((p_norm + 1) / 2, 0, 1), bin = min(floor(256 u), 255).
// std::nullopt stands for an unvoiced frame and maps to 256.
int Quantize(std::optional<double> p_norm);

// Bin-center inverse of Quantize(Normalize(.)): returns the log-F0 at the
// center of `bin`. Throws DataError for the unvoiced bin.
double Dequantize(int bin, const SpeakerF0Stats &stats);

// Per-frame bins of a contour, normalized with `stats`.
QuantizedF0 QuantizeContour(const F0Contour &contour, const SpeakerF0Stats &stats);

// Every voiced frame forced to `bin`; unvoiced frames keep 256.
QuantizedF0 FlatContour(const F0Contour &contour, int bin);

// T x 257 matrix with a single 1 per row.
Matrix OneHot(const QuantizedF0 &bins);

// Gaussian normalized transformation of a source log-F0 into the target
// speaker's range: mu_tgt + (sigma_tgt / sigma_src) (log_f0 - mu_src).
double PseudoF0(double log_f0_src, const SpeakerF0Stats &src, const SpeakerF0Stats &tgt);

// PseudoF0 applied to every voiced frame (in Hz); unvoiced stays unvoiced.
F0Contour PseudoF0Contour(const F0Contour &src_contour, const SpeakerF0Stats &src,
                          const SpeakerF0Stats &tgt);

// Text record "speaker_id mu sigma n_frames" used in the corpus manifest.
std::string FormatStatsRecord(const std::string &speaker_id, const SpeakerF0Stats &stats);
SpeakerF0Stats ParseStatsRecord(const std::string &line, std::string *speaker_id);

}  // namespace f0vc

#endif  // F0VC_CODEC_F0_CODEC_H_
