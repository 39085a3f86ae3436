// include/f0vc/cli/run_config.h

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

#ifndef F0VC_CLI_RUN_CONFIG_H_
#define F0VC_CLI_RUN_CONFIG_H_

#include <string>

#include "f0vc/dsp/audio_config.h"
#include "f0vc/model/model_config.h"
#include "f0vc/train/train_config.h"

namespace f0vc {

// Flat "section.key=value" settings. Sections: audio, model, train, paths
// (paths.corpus, paths.work, paths.checkpoint). Blank lines and lines
// starting with '#' are ignored.
struct RunConfig {
  AudioConfig audio;
  ModelConfig model;
  TrainConfig train;
  std::string corpus;
  std::string work;
  std::string checkpoint;

  // Throws UsageError for unknown keys and unparsable values.
  void Set(const std::string &key, const std::string &value);
  // Applies every line of a config file body. Line numbers appear in errors.
  void Apply(const std::string &text);
};

void SetAudioKey(AudioConfig *cfg, const std::string &key, const std::string &value);
std::string AudioConfigToText(const AudioConfig &cfg);
AudioConfig AudioConfigFromText(const std::string &text);

}  // namespace f0vc

#endif  // F0VC_CLI_RUN_CONFIG_H_
