// src/dsp/spectral.cc

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

#include "f0vc/dsp/spectral.h"

#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "f0vc/common/error.h"

namespace f0vc {

namespace {

double HzToMel(double hz) {
  return 2595.0 * std::log10(1.0 + hz / 700.0);
}
double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

}  // namespace

void AudioConfig::Validate() const {
  auto fail = [](const std::string &what) { throw UsageError("AudioConfig: " + what); };
  if (sample_rate <= 0) fail("sample_rate must be positive");
  if (hop <= 0 || window <= 0 || fft_size <= 0) fail("hop, window and fft_size must be positive");
  if (!(hop <= window && window <= fft_size)) fail("require hop <= window <= fft_size");
  if (mel_bins != 80) fail("mel_bins must be 80 to match the model input");
  if (!(mel_fmin >= 0 && mel_fmin < mel_fmax && mel_fmax <= sample_rate / 2.0))
    fail("require 0 <= mel_fmin < mel_fmax <= sample_rate/2");
  if (!(f0_min > 0 && f0_min < f0_max && f0_max < sample_rate / 2.0))
    fail("require 0 < f0_min < f0_max < sample_rate/2");
  if (sample_rate / f0_min >= window) fail("window too short for f0_min");
  if (!(voicing_threshold > 0 && voicing_threshold < 1))
    fail("voicing_threshold must lie in (0, 1)");
  if (!(log_floor > 0)) fail("log_floor must be positive");
}

Vector HannWindow(int length) {
  Vector w(length);
  for (int n = 0; n < length; ++n) w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / length);
  return w;
}

Matrix MelFilterbank(const AudioConfig &cfg) {
  const int num_bins = cfg.fft_size / 2 + 1;
  const double lo = HzToMel(cfg.mel_fmin), hi = HzToMel(cfg.mel_fmax);
  std::vector<double> edges(cfg.mel_bins + 2);
  for (int i = 0; i < cfg.mel_bins + 2; ++i)
    edges[i] = MelToHz(lo + (hi - lo) * i / (cfg.mel_bins + 1));
  Matrix fb = Matrix::Zero(cfg.mel_bins, num_bins);
  for (int m = 0; m < cfg.mel_bins; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    for (int k = 0; k < num_bins; ++k) {
      const double f = static_cast<double>(k) * cfg.sample_rate / cfg.fft_size;
      if (f > left && f < right)
        fb(m, k) = f <= center ? (f - left) / (center - left) : (right - f) / (right - center);
    }
  }
  return fb;
}

Vector MelCenterFrequencies(const AudioConfig &cfg) {
  const double lo = HzToMel(cfg.mel_fmin), hi = HzToMel(cfg.mel_fmax);
  Vector c(cfg.mel_bins);
  for (int m = 0; m < cfg.mel_bins; ++m)
    c[m] = MelToHz(lo + (hi - lo) * (m + 1) / (cfg.mel_bins + 1));
  return c;
}

ComplexMatrix Stft(const std::vector<double> &samples, const AudioConfig &cfg) {
  const int frames = cfg.NumFrames(static_cast<long>(samples.size()));
  const int num_bins = cfg.fft_size / 2 + 1;
  const Vector window = HannWindow(cfg.window);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> buf(cfg.fft_size);
  std::vector<std::complex<double>> spec;
  ComplexMatrix out(frames, num_bins);
  for (int t = 0; t < frames; ++t) {
    std::fill(buf.begin(), buf.end(), 0.0);
    const size_t start = static_cast<size_t>(t) * cfg.hop;
    for (int n = 0; n < cfg.window; ++n) buf[n] = samples[start + n] * window[n];
    fft.fwd(spec, buf);
    for (int k = 0; k < num_bins; ++k) out(t, k) = spec[k];
  }
  return out;
}

std::vector<double> Istft(const ComplexMatrix &spec, const AudioConfig &cfg) {
  const int frames = static_cast<int>(spec.rows());
  if (frames == 0) return {};
  const int num_bins = cfg.fft_size / 2 + 1;
  if (spec.cols() != num_bins) throw DataError("Istft: spectrum width does not match fft_size");
  const Vector window = HannWindow(cfg.window);
  const size_t length = static_cast<size_t>(frames - 1) * cfg.hop + cfg.window;
  std::vector<double> num(length, 0.0), den(length, 0.0);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<std::complex<double>> half(num_bins);
  std::vector<double> frame;
  for (int t = 0; t < frames; ++t) {
    for (int k = 0; k < num_bins; ++k) half[k] = spec(t, k);
    fft.inv(frame, half, cfg.fft_size);
    const size_t start = static_cast<size_t>(t) * cfg.hop;
    for (int n = 0; n < cfg.window; ++n) {
      num[start + n] += frame[n] * window[n];
      den[start + n] += window[n] * window[n];
    }
  }
  // Interior overlap-add gain; the floor keeps the tapered edges bounded.
  double peak = 0.0;
  for (double d : den) peak = std::max(peak, d);
  const double floor = 1e-3 * peak;
  for (size_t i = 0; i < length; ++i) num[i] /= std::max(den[i], floor);
  return num;
}

MelSpectrogram ComputeMelSpectrogram(const Waveform &wave, const AudioConfig &cfg) {
  if (static_cast<long>(wave.samples.size()) < cfg.window)
    throw DataError("waveform shorter than one analysis window (" +
                    std::to_string(wave.samples.size()) + " < " + std::to_string(cfg.window) +
                    " samples)");
  const ComplexMatrix spec = Stft(wave.samples, cfg);
  const Matrix mag = spec.cwiseAbs();
  const Matrix fb = MelFilterbank(cfg);
  MelSpectrogram mel;
  mel.frames = (mag * fb.transpose()).cwiseMax(cfg.log_floor).array().log().matrix();
  return mel;
}

}  // namespace f0vc
