// src/codec/f0_codec.cc

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

#include "f0vc/codec/f0_codec.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "f0vc/common/error.h"

namespace f0vc {

void SpeakerF0Stats::Validate() const {
  if (n_frames < kMinFrames)
    throw DataError("F0 statistics need at least " + std::to_string(kMinFrames) +
                    " voiced frames, got " + std::to_string(n_frames));
  // Anything below kMinSigma is a constant contour up to rounding.
  constexpr double kMinSigma = 1e-9;
  if (!(sigma > kMinSigma) || !std::isfinite(sigma) || !std::isfinite(mu))
    throw DataError(
        "F0 statistics have a zero or non-finite spread (sigma = " + std::to_string(sigma) + ")");
}

SpeakerF0Stats ComputeStats(const std::vector<F0Contour> &contours) {
  // Two passes for a numerically stable variance.
  double sum = 0.0;
  int64_t n = 0;
  for (const auto &c : contours)
    for (const auto &f : c)
      if (f.voiced) {
        sum += std::log(f.f0_hz);
        ++n;
      }
  SpeakerF0Stats stats;
  stats.n_frames = n;
  if (n < SpeakerF0Stats::kMinFrames) stats.Validate();
  stats.mu = sum / n;
  double sq = 0.0;
  for (const auto &c : contours)
    for (const auto &f : c)
      if (f.voiced) {
        const double d = std::log(f.f0_hz) - stats.mu;
        sq += d * d;
      }
  stats.sigma = std::sqrt(sq / n);
  stats.Validate();
  return stats;
}

double Normalize(double log_f0, const SpeakerF0Stats &stats) {
  return (log_f0 - stats.mu) / (4.0 * stats.sigma);
}

int Quantize(std::optional<double> p_norm) {
  if (!p_norm) return kUnvoicedBin;
  const double u = std::clamp((*p_norm + 1.0) / 2.0, 0.0, 1.0);
  return std::min(static_cast<int>(std::floor(u * kPitchBins)), kPitchBins - 1);
}

double Dequantize(int bin, const SpeakerF0Stats &stats) {
  if (bin < 0 || bin >= kPitchBins)
    throw DataError("Dequantize: bin " + std::to_string(bin) + " carries no pitch value");
  const double u = (bin + 0.5) / kPitchBins;
  return stats.mu + 4.0 * stats.sigma * (2.0 * u - 1.0);
}

QuantizedF0 QuantizeContour(const F0Contour &contour, const SpeakerF0Stats &stats) {
  QuantizedF0 bins(contour.size());
  for (size_t t = 0; t < contour.size(); ++t)
    bins[t] =
        contour[t].voiced ? Quantize(Normalize(std::log(contour[t].f0_hz), stats)) : kUnvoicedBin;
  return bins;
}

QuantizedF0 FlatContour(const F0Contour &contour, int bin) {
  if (bin < 0 || bin >= kPitchBins)
    throw UsageError("flat F0 bin must lie in [0, 255], got " + std::to_string(bin));
  QuantizedF0 bins(contour.size());
  for (size_t t = 0; t < contour.size(); ++t) bins[t] = contour[t].voiced ? bin : kUnvoicedBin;
  return bins;
}

Matrix OneHot(const QuantizedF0 &bins) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(bins.size()), kF0Classes);
  for (size_t t = 0; t < bins.size(); ++t) {
    if (bins[t] < 0 || bins[t] >= kF0Classes)
      throw DataError("OneHot: bin " + std::to_string(bins[t]) + " out of range");
    m(static_cast<Eigen::Index>(t), bins[t]) = 1.0;
  }
  return m;
}

double PseudoF0(double log_f0_src, const SpeakerF0Stats &src, const SpeakerF0Stats &tgt) {
  return tgt.mu + (tgt.sigma / src.sigma) * (log_f0_src - src.mu);
}

F0Contour PseudoF0Contour(const F0Contour &src_contour, const SpeakerF0Stats &src,
                          const SpeakerF0Stats &tgt) {
  F0Contour out(src_contour.size());
  for (size_t t = 0; t < src_contour.size(); ++t) {
    if (!src_contour[t].voiced) continue;
    out[t].voiced = true;
    out[t].f0_hz = std::exp(PseudoF0(std::log(src_contour[t].f0_hz), src, tgt));
  }
  return out;
}

std::string FormatStatsRecord(const std::string &speaker_id, const SpeakerF0Stats &stats) {
  std::ostringstream os;
  os << speaker_id << ' ' << std::setprecision(17) << stats.mu << ' ' << stats.sigma << ' '
     << stats.n_frames;
  return os.str();
}

SpeakerF0Stats ParseStatsRecord(const std::string &line, std::string *speaker_id) {
  std::istringstream is(line);
  SpeakerF0Stats stats;
  std::string id;
  if (!(is >> id >> stats.mu >> stats.sigma >> stats.n_frames))
    throw DataError("malformed F0 stats record: '" + line + "'");
  stats.Validate();
  if (speaker_id) *speaker_id = id;
  return stats;
}

}  // namespace f0vc
