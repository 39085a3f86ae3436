// src/train/train_config.cc

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

#include "f0vc/train/train_config.h"

#include <iomanip>
#include <sstream>

#include "f0vc/common/error.h"

namespace f0vc {

namespace {

template <typename T>
T ParseNumber(const std::string &key, const std::string &value) {
  std::istringstream is(value);
  T v{};
  is >> v;
  if (!is || !is.eof()) throw UsageError("train." + key + ": cannot parse '" + value + "'");
  return v;
}

}  // namespace

void TrainConfig::Validate() const {
  auto fail = [](const std::string &what) { throw UsageError("TrainConfig: " + what); };
  if (!(lr > 0)) fail("lr must be positive");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (iterations < 0) fail("iterations must be >= 0");
  if (!(lambda >= 0)) fail("lambda must be >= 0");
  if (!(crop_min_s > 0) || crop_max_s < crop_min_s) fail("crop range must satisfy 0 < min <= max");
  if (!(stretch_min > 0) || stretch_max < stretch_min)
    fail("stretch range must satisfy 0 < min <= max");
  if (!(gain_min > 0) || gain_max < gain_min || gain_max > 1.0)
    fail("gain range must satisfy 0 < min <= max <= 1");
  if (checkpoint_every < 0) fail("checkpoint_every must be >= 0");
}

std::string TrainConfig::ToText() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "lr=" << lr << '\n'
     << "batch_size=" << batch_size << '\n'
     << "iterations=" << iterations << '\n'
     << "lambda=" << lambda << '\n'
     << "crop_min_s=" << crop_min_s << '\n'
     << "crop_max_s=" << crop_max_s << '\n'
     << "stretch_min=" << stretch_min << '\n'
     << "stretch_max=" << stretch_max << '\n'
     << "gain_min=" << gain_min << '\n'
     << "gain_max=" << gain_max << '\n'
     << "clip_norm=" << clip_norm << '\n'
     << "seed=" << seed << '\n'
     << "checkpoint_every=" << checkpoint_every << '\n';
  return os.str();
}

void TrainConfig::Set(const std::string &key, const std::string &value) {
  if (key == "lr")
    lr = ParseNumber<double>(key, value);
  else if (key == "batch_size")
    batch_size = ParseNumber<int>(key, value);
  else if (key == "iterations")
    iterations = ParseNumber<int64_t>(key, value);
  else if (key == "lambda")
    lambda = ParseNumber<double>(key, value);
  else if (key == "crop_min_s")
    crop_min_s = ParseNumber<double>(key, value);
  else if (key == "crop_max_s")
    crop_max_s = ParseNumber<double>(key, value);
  else if (key == "stretch_min")
    stretch_min = ParseNumber<double>(key, value);
  else if (key == "stretch_max")
    stretch_max = ParseNumber<double>(key, value);
  else if (key == "gain_min")
    gain_min = ParseNumber<double>(key, value);
  else if (key == "gain_max")
    gain_max = ParseNumber<double>(key, value);
  else if (key == "clip_norm")
    clip_norm = ParseNumber<double>(key, value);
  else if (key == "seed")
    seed = ParseNumber<uint64_t>(key, value);
  else if (key == "checkpoint_every")
    checkpoint_every = ParseNumber<int64_t>(key, value);
  else
    throw UsageError("unknown train key: " + key);
}

TrainConfig TrainConfig::FromText(const std::string &text) {
  TrainConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("malformed train config line: " + line);
    cfg.Set(line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

}  // namespace f0vc
