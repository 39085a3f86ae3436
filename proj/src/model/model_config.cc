// src/model/model_config.cc

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

#include "f0vc/model/model_config.h"

#include <iomanip>
#include <sstream>

#include "f0vc/common/error.h"

namespace f0vc {

namespace {

int ParseInt(const std::string &key, const std::string &value) {
  try {
    size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception &) {
    throw UsageError("model." + key + ": expected an integer, got '" + value + "'");
  }
}

double ParseDouble(const std::string &key, const std::string &value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception &) {
    throw UsageError("model." + key + ": expected a number, got '" + value + "'");
  }
}

bool ParseBool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw UsageError("model." + key + ": expected true/false, got '" + value + "'");
}

}  // namespace

void ModelConfig::Validate() const {
  auto fail = [](const std::string &what) { throw UsageError("ModelConfig: " + what); };
  if (mel_dim != 80) fail("mel_dim must be 80");
  if (conv_channels < 1 || n_enc_conv < 1 || enc_cell < 1 || n_dec_lstm < 1 || dec_cell < 1)
    fail("layer widths and counts must be positive");
  if (postnet_layers < 2) fail("postnet needs at least two layers");
  if (downsample < 1) fail("downsample must be >= 1");
  if (n_speakers < 1) fail("n_speakers must be positive");
  if (use_f0 && f0_bins != 257) fail("f0_bins must be 257 when use_f0 is set");
  if (!(mel_std > 0)) fail("mel_std must be positive");
}

std::string ModelConfig::ToText() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "mel_dim=" << mel_dim << '\n'
     << "conv_channels=" << conv_channels << '\n'
     << "n_enc_conv=" << n_enc_conv << '\n'
     << "enc_cell=" << enc_cell << '\n'
     << "downsample=" << downsample << '\n'
     << "n_dec_lstm=" << n_dec_lstm << '\n'
     << "dec_cell=" << dec_cell << '\n'
     << "postnet_layers=" << postnet_layers << '\n'
     << "n_speakers=" << n_speakers << '\n'
     << "f0_bins=" << f0_bins << '\n'
     << "use_f0=" << (use_f0 ? "true" : "false") << '\n'
     << "mel_mean=" << mel_mean << '\n'
     << "mel_std=" << mel_std << '\n';
  return os.str();
}

void ModelConfig::Set(const std::string &key, const std::string &value) {
  if (key == "mel_dim")
    mel_dim = ParseInt(key, value);
  else if (key == "conv_channels")
    conv_channels = ParseInt(key, value);
  else if (key == "n_enc_conv")
    n_enc_conv = ParseInt(key, value);
  else if (key == "enc_cell")
    enc_cell = ParseInt(key, value);
  else if (key == "downsample")
    downsample = ParseInt(key, value);
  else if (key == "n_dec_lstm")
    n_dec_lstm = ParseInt(key, value);
  else if (key == "dec_cell")
    dec_cell = ParseInt(key, value);
  else if (key == "postnet_layers")
    postnet_layers = ParseInt(key, value);
  else if (key == "n_speakers")
    n_speakers = ParseInt(key, value);
  else if (key == "f0_bins")
    f0_bins = ParseInt(key, value);
  else if (key == "use_f0")
    use_f0 = ParseBool(key, value);
  else if (key == "mel_mean")
    mel_mean = ParseDouble(key, value);
  else if (key == "mel_std")
    mel_std = ParseDouble(key, value);
  else
    throw UsageError("unknown model key: " + key);
}

ModelConfig ModelConfig::FromText(const std::string &text) {
  ModelConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("malformed model config line: " + line);
    cfg.Set(line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

}  // namespace f0vc
