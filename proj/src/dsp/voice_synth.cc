// src/dsp/voice_synth.cc

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

#include "f0vc/dsp/voice_synth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace f0vc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class PhoneKind { kVowel, kNasal, kFricative, kPause };

struct Phone {
  PhoneKind kind;
  std::array<double, 3> formants;  // Hz, before speaker scaling
  double noise_center = 0.0;       // fricative band center
  double noise_bandwidth = 0.0;
  double gain = 1.0;
};

const std::array<Phone, 8> kVowels = {{
    {PhoneKind::kVowel, {730, 1090, 2440}},
    {PhoneKind::kVowel, {270, 2290, 3010}},
    {PhoneKind::kVowel, {300, 870, 2240}},
    {PhoneKind::kVowel, {530, 1840, 2480}},
    {PhoneKind::kVowel, {570, 840, 2410}},
    {PhoneKind::kVowel, {660, 1720, 2410}},
    {PhoneKind::kVowel, {490, 1350, 1690}},
    {PhoneKind::kVowel, {440, 1020, 2240}},
}};

const std::array<Phone, 2> kNasals = {{
    {PhoneKind::kNasal, {250, 1100, 2300}, 0, 0, 0.35},
    {PhoneKind::kNasal, {280, 1700, 2500}, 0, 0, 0.35},
}};

const std::array<Phone, 3> kFricatives = {{
    {PhoneKind::kFricative, {500, 1500, 2500}, 5500, 2000, 0.25},
    {PhoneKind::kFricative, {500, 1500, 2500}, 3200, 1200, 0.25},
    {PhoneKind::kFricative, {500, 1500, 2500}, 1800, 3000, 0.12},
}};

struct Segment {
  Phone phone;
  long length;  // samples
};

// Two-pole digital resonator (unit gain at DC).
class Resonator {
 public:
  void Set(double freq, double bandwidth, int sample_rate) {
    const double t = 1.0 / sample_rate;
    c_ = -std::exp(-kTwoPi * bandwidth * t);
    b_ = 2.0 * std::exp(-std::numbers::pi * bandwidth * t) * std::cos(kTwoPi * freq * t);
    a_ = 1.0 - b_ - c_;
  }
  double Step(double x) {
    const double y = a_ * x + b_ * y1_ + c_ * y2_;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  double a_ = 1, b_ = 0, c_ = 0, y1_ = 0, y2_ = 0;
};

std::vector<Segment> DrawSegments(double duration_s, int sample_rate, Rng &rng) {
  std::vector<Segment> segs;
  const long total = static_cast<long>(duration_s * sample_rate);
  auto ms = [&](double lo, double hi) {
    return static_cast<long>(rng.Uniform(lo, hi) * 1e-3 * sample_rate);
  };
  long used = 0;
  segs.push_back({{PhoneKind::kPause, {500, 1500, 2500}}, ms(80, 160)});
  used += segs.back().length;
  while (used < total) {
    if (rng.Uniform() < 0.5) {
      segs.push_back({kFricatives[rng.UniformInt(0, kFricatives.size() - 1)], ms(60, 120)});
      used += segs.back().length;
    }
    segs.push_back({kVowels[rng.UniformInt(0, kVowels.size() - 1)], ms(110, 240)});
    used += segs.back().length;
    if (rng.Uniform() < 0.35) {
      segs.push_back({kNasals[rng.UniformInt(0, kNasals.size() - 1)], ms(50, 90)});
      used += segs.back().length;
    }
    if (rng.Uniform() < 0.15) {
      segs.push_back({{PhoneKind::kPause, {500, 1500, 2500}}, ms(80, 180)});
      used += segs.back().length;
    }
  }
  return segs;
}

}  // namespace

std::vector<VoiceProfile> DefaultToyVoices() {
  return {
      {"low1", 105.0, 0.13, 0.92, 1.0, 0.02},
      {"low2", 128.0, 0.12, 0.98, 1.2, 0.03},
      {"high1", 205.0, 0.12, 1.12, 1.1, 0.03},
      {"high2", 245.0, 0.14, 1.18, 1.3, 0.02},
  };
}

SynthResult SynthesizeUtterance(const VoiceProfile &voice, double duration_s, Rng &rng,
                                int sample_rate) {
  const std::vector<Segment> segs = DrawSegments(duration_s, sample_rate, rng);
  const long n = static_cast<long>(duration_s * sample_rate);

  // Intonation: declination plus three slow random sinusoids, unit-ish spread.
  std::array<double, 3> freq, phase, amp;
  for (int i = 0; i < 3; ++i) {
    freq[i] = rng.Uniform(0.3, 2.5);
    phase[i] = rng.Uniform(0.0, kTwoPi);
    amp[i] = rng.Uniform(0.5, 1.0);
  }
  const double amp_norm =
      std::sqrt((amp[0] * amp[0] + amp[1] * amp[1] + amp[2] * amp[2]) / 2.0 + 1.0 / 12.0);
  const double declination = rng.Uniform(0.5, 1.0);

  SynthResult out;
  out.wave.sample_rate = sample_rate;
  out.wave.samples.assign(n, 0.0);
  out.f0_hz.assign(n, 0.0);

  std::array<Resonator, 4> tract;
  Resonator frication;
  std::array<double, 3> formants = segs.front().phone.formants;
  double voicing = 0.0, noise_level = 0.0;
  double glottal_phase = 0.0;
  const double smooth = 1.0 - std::exp(-1.0 / (0.015 * sample_rate));

  long seg_index = 0, seg_pos = 0;
  for (long i = 0; i < n; ++i) {
    while (seg_index < static_cast<long>(segs.size()) - 1 && seg_pos >= segs[seg_index].length) {
      seg_pos = 0;
      ++seg_index;
    }
    const Phone &ph = segs[seg_index].phone;
    ++seg_pos;

    const bool voiced = ph.kind == PhoneKind::kVowel || ph.kind == PhoneKind::kNasal;
    const double target_voicing = voiced ? ph.gain : 0.0;
    const double target_noise = ph.kind == PhoneKind::kFricative ? ph.gain : 0.0;
    voicing += smooth * (target_voicing - voicing);
    noise_level += smooth * (target_noise - noise_level);
    for (int k = 0; k < 3; ++k) formants[k] += smooth * (ph.formants[k] - formants[k]);

    const double t = static_cast<double>(i) / sample_rate;
    double z = declination * (0.5 - t / duration_s);
    for (int k = 0; k < 3; ++k) z += amp[k] * std::sin(kTwoPi * freq[k] * t + phase[k]);
    const double f0 = voice.f0_mean_hz * std::exp(voice.log_f0_std * z / amp_norm);

    // Band-limited harmonic source, amplitudes k^-tilt.
    glottal_phase = std::fmod(glottal_phase + kTwoPi * f0 / sample_rate, kTwoPi);
    const int harmonics = std::max(1, static_cast<int>(0.45 * sample_rate / f0));
    double s_prev = 0.0, s_cur = std::sin(glottal_phase);
    const double two_cos = 2.0 * std::cos(glottal_phase);
    double source = 0.0;
    for (int k = 1; k <= harmonics; ++k) {
      source += s_cur * std::pow(static_cast<double>(k), -voice.tilt);
      const double s_next = two_cos * s_cur - s_prev;
      s_prev = s_cur;
      s_cur = s_next;
    }
    source += voice.breath * rng.Normal();

    if (i % 32 == 0) {
      const std::array<double, 4> bw = {70.0, 100.0, 160.0, 220.0};
      for (int k = 0; k < 3; ++k)
        tract[k].Set(formants[k] * voice.formant_scale, bw[k], sample_rate);
      tract[3].Set(3500.0 * voice.formant_scale, bw[3], sample_rate);
      if (ph.kind == PhoneKind::kFricative)
        frication.Set(ph.noise_center, ph.noise_bandwidth, sample_rate);
    }
    double y = voicing * source;
    for (auto &r : tract) y = r.Step(y);
    const double hiss = frication.Step(rng.Normal()) * noise_level * 4.0;
    out.wave.samples[i] = y + hiss + 1e-4 * rng.Normal();
    out.f0_hz[i] = voiced && voicing > 0.5 * ph.gain ? f0 : 0.0;
  }

  double peak = 0.0;
  for (double s : out.wave.samples) peak = std::max(peak, std::abs(s));
  if (peak > 0.0)
    for (double &s : out.wave.samples) s *= 0.5 / peak;
  return out;
}

Waveform SineWave(double freq_hz, double duration_s, double amplitude, int sample_rate) {
  Waveform w;
  w.sample_rate = sample_rate;
  const long n = static_cast<long>(std::lround(duration_s * sample_rate));
  w.samples.resize(n);
  for (long i = 0; i < n; ++i)
    w.samples[i] = amplitude * std::sin(kTwoPi * freq_hz * i / sample_rate);
  return w;
}

}  // namespace f0vc
