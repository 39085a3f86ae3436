// src/dsp/wav.cc

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

#include "f0vc/dsp/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>

#include "f0vc/common/error.h"

namespace f0vc {

namespace {

uint16_t ReadU16(const unsigned char *p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t ReadU32(const unsigned char *p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

void PutU16(std::string *out, uint16_t v) {
  out->push_back(static_cast<char>(v & 0xff));
  out->push_back(static_cast<char>(v >> 8));
}

void PutU32(std::string *out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

Waveform LoadWav(const std::string &path, int target_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open WAV file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto *data = reinterpret_cast<const unsigned char *>(bytes.data());
  const size_t size = bytes.size();
  if (size < 12 || std::memcmp(data, "RIFF", 4) != 0 || std::memcmp(data + 8, "WAVE", 4) != 0)
    throw DataError("not a RIFF/WAVE file: " + path);

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const unsigned char *pcm = nullptr;
  size_t pcm_bytes = 0;
  bool have_fmt = false;
  size_t pos = 12;
  while (pos + 8 <= size) {
    const unsigned char *chunk = data + pos;
    const uint32_t len = ReadU32(chunk + 4);
    const size_t body = pos + 8;
    const size_t avail = std::min<size_t>(len, size - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (avail < 16) throw DataError("truncated fmt chunk in " + path);
      format = ReadU16(data + body);
      channels = ReadU16(data + body + 2);
      rate = ReadU32(data + body + 4);
      bits = ReadU16(data + body + 14);
      if (format == kFormatExtensible) {
        if (avail < 26) throw DataError("truncated extensible fmt chunk in " + path);
        format = ReadU16(data + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      pcm = data + body;
      pcm_bytes = avail;
    }
    pos = body + len + (len & 1);
  }
  if (!have_fmt || pcm == nullptr) throw DataError("missing fmt or data chunk in " + path);
  if (channels != 1)
    throw DataError("only mono audio is supported; " + path + " has " + std::to_string(channels) +
                    " channels");
  if (rate == 0) throw DataError("zero sample rate in " + path);

  Waveform wave;
  wave.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    const size_t n = pcm_bytes / 2;
    wave.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const auto s = static_cast<int16_t>(ReadU16(pcm + 2 * i));
      wave.samples[i] = s / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    const size_t n = pcm_bytes / 4;
    wave.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const uint32_t u = ReadU32(pcm + 4 * i);
      float f;
      std::memcpy(&f, &u, sizeof f);
      if (!std::isfinite(f)) throw DataError("non-finite sample in " + path);
      wave.samples[i] = std::clamp(static_cast<double>(f), -1.0, 1.0);
    }
  } else {
    throw DataError("unsupported WAV encoding in " + path + " (format " + std::to_string(format) +
                    ", " + std::to_string(bits) + " bits); expected 16-bit PCM or 32-bit float");
  }
  if (target_rate > 0 && target_rate != wave.sample_rate) return Resample(wave, target_rate);
  return wave;
}

void SaveWav(const std::string &path, const Waveform &wave) {
  const auto n = static_cast<uint32_t>(wave.samples.size());
  std::string out;
  out.reserve(44 + 2 * n);
  out += "RIFF";
  PutU32(&out, 36 + 2 * n);
  out += "WAVEfmt ";
  PutU32(&out, 16);
  PutU16(&out, kFormatPcm);
  PutU16(&out, 1);
  PutU32(&out, static_cast<uint32_t>(wave.sample_rate));
  PutU32(&out, static_cast<uint32_t>(wave.sample_rate) * 2);
  PutU16(&out, 2);
  PutU16(&out, 16);
  out += "data";
  PutU32(&out, 2 * n);
  for (double s : wave.samples) {
    const double c = std::clamp(s, -1.0, 1.0);
    const auto q = static_cast<int16_t>(std::lround(std::min(c * 32768.0, 32767.0)));
    PutU16(&out, static_cast<uint16_t>(q));
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot write WAV file: " + path);
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw DataError("write failed: " + path);
}

Waveform Resample(const Waveform &wave, int new_rate) {
  if (new_rate <= 0) throw UsageError("Resample: target rate must be positive");
  if (new_rate == wave.sample_rate) return wave;
  const double ratio = static_cast<double>(new_rate) / wave.sample_rate;
  const long n_in = static_cast<long>(wave.samples.size());
  const long n_out = std::lround(n_in * ratio);
  // Cutoff in cycles per input sample, slightly below the lower Nyquist.
  const double cutoff = 0.5 * std::min(1.0, ratio) * 0.97;
  constexpr double kZeroCrossings = 16.0;
  const double half_width = kZeroCrossings / (2.0 * cutoff);

  Waveform out;
  out.sample_rate = new_rate;
  out.samples.assign(n_out, 0.0);
  for (long j = 0; j < n_out; ++j) {
    const double t = j / ratio;
    const long lo = std::max<long>(0, static_cast<long>(std::ceil(t - half_width)));
    const long hi = std::min<long>(n_in - 1, static_cast<long>(std::floor(t + half_width)));
    double acc = 0.0;
    for (long k = lo; k <= hi; ++k) {
      const double d = t - k;
      const double arg = 2.0 * cutoff * d;
      const double sinc =
          std::abs(arg) < 1e-12 ? 1.0 : std::sin(std::numbers::pi * arg) / (std::numbers::pi * arg);
      const double w = 0.5 + 0.5 * std::cos(std::numbers::pi * d / half_width);
      acc += wave.samples[k] * 2.0 * cutoff * sinc * w;
    }
    out.samples[j] = acc;
  }
  return out;
}

}  // namespace f0vc
