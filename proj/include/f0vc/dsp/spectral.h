// include/f0vc/dsp/spectral.h

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

#ifndef F0VC_DSP_SPECTRAL_H_
#define F0VC_DSP_SPECTRAL_H_

#include <complex>

#include "f0vc/dsp/audio_config.h"
#include "f0vc/dsp/types.h"

namespace f0vc {

using ComplexMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Periodic Hann window of cfg.window samples.
Vector HannWindow(int length);

// mel_bins x (fft_size / 2 + 1) triangular filters on the HTK mel scale,
// unit peak height.
Matrix MelFilterbank(const AudioConfig &cfg);

// Center frequency in Hz of every mel filter.
Vector MelCenterFrequencies(const AudioConfig &cfg);

// Frames x (fft_size / 2 + 1) short-time spectrum; no implicit padding.
ComplexMatrix Stft(const std::vector<double> &samples, const AudioConfig &cfg);

// Weighted overlap-add inverse of Stft. Output length is
// (frames - 1) * hop + window.
std::vector<double> Istft(const ComplexMatrix &spec, const AudioConfig &cfg);

// log(max(filterbank . |STFT|, log_floor)), T = 1 + (len - window) / hop.
// Throws DataError if the waveform is shorter than one window.
MelSpectrogram ComputeMelSpectrogram(const Waveform &wave, const AudioConfig &cfg);

}  // namespace f0vc

#endif  // F0VC_DSP_SPECTRAL_H_
