// src/cli/run_config.cc

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

#include "f0vc/cli/run_config.h"

#include <iomanip>
#include <sstream>

#include "f0vc/common/error.h"

namespace f0vc {

namespace {

template <typename T>
T Parse(const std::string &key, const std::string &value) {
  std::istringstream is(value);
  T v{};
  is >> v;
  if (!is || !is.eof()) throw UsageError("audio." + key + ": cannot parse '" + value + "'");
  return v;
}

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void SetAudioKey(AudioConfig *cfg, const std::string &key, const std::string &value) {
  if (key == "sample_rate")
    cfg->sample_rate = Parse<int>(key, value);
  else if (key == "fft_size")
    cfg->fft_size = Parse<int>(key, value);
  else if (key == "hop")
    cfg->hop = Parse<int>(key, value);
  else if (key == "window")
    cfg->window = Parse<int>(key, value);
  else if (key == "mel_bins")
    cfg->mel_bins = Parse<int>(key, value);
  else if (key == "mel_fmin")
    cfg->mel_fmin = Parse<double>(key, value);
  else if (key == "mel_fmax")
    cfg->mel_fmax = Parse<double>(key, value);
  else if (key == "f0_min")
    cfg->f0_min = Parse<double>(key, value);
  else if (key == "f0_max")
    cfg->f0_max = Parse<double>(key, value);
  else if (key == "voicing_threshold")
    cfg->voicing_threshold = Parse<double>(key, value);
  else if (key == "log_floor")
    cfg->log_floor = Parse<double>(key, value);
  else
    throw UsageError("unknown audio key: " + key);
}

std::string AudioConfigToText(const AudioConfig &c) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "sample_rate=" << c.sample_rate << '\n'
     << "fft_size=" << c.fft_size << '\n'
     << "hop=" << c.hop << '\n'
     << "window=" << c.window << '\n'
     << "mel_bins=" << c.mel_bins << '\n'
     << "mel_fmin=" << c.mel_fmin << '\n'
     << "mel_fmax=" << c.mel_fmax << '\n'
     << "f0_min=" << c.f0_min << '\n'
     << "f0_max=" << c.f0_max << '\n'
     << "voicing_threshold=" << c.voicing_threshold << '\n'
     << "log_floor=" << c.log_floor << '\n';
  return os.str();
}

AudioConfig AudioConfigFromText(const std::string &text) {
  AudioConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("malformed audio config line: " + line);
    SetAudioKey(&cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  cfg.Validate();
  return cfg;
}

void RunConfig::Set(const std::string &key, const std::string &value) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) throw UsageError("config key needs a section prefix: " + key);
  const std::string section = key.substr(0, dot), name = key.substr(dot + 1);
  if (section == "audio")
    SetAudioKey(&audio, name, value);
  else if (section == "model")
    model.Set(name, value);
  else if (section == "train")
    train.Set(name, value);
  else if (section == "paths") {
    if (name == "corpus")
      corpus = value;
    else if (name == "work")
      work = value;
    else if (name == "checkpoint")
      checkpoint = value;
    else
      throw UsageError("unknown paths key: " + name);
  } else {
    throw UsageError("unknown config section: " + section);
  }
}

void RunConfig::Apply(const std::string &text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    try {
      Set(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
    } catch (const UsageError &e) {
      throw UsageError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace f0vc
