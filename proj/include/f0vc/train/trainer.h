// include/f0vc/train/trainer.h

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

#ifndef F0VC_TRAIN_TRAINER_H_
#define F0VC_TRAIN_TRAINER_H_

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "f0vc/common/rng.h"
#include "f0vc/dsp/audio_config.h"
#include "f0vc/model/autoencoder.h"
#include "f0vc/nn/adam.h"
#include "f0vc/train/corpus.h"
#include "f0vc/train/train_config.h"

namespace f0vc {

// Training utterances plus per-speaker F0 statistics (training split only).
struct TrainingSet {
  std::vector<UtteranceFeatures> utterances;
  std::vector<SpeakerF0Stats> stats;  // indexed by speaker

  int NumSpeakers() const { return static_cast<int>(stats.size()); }
};

struct LossRecord {
  int64_t iteration = 0;  // 1-based
  double total = 0.0;
  double mel_pre = 0.0;
  double mel_post = 0.0;
  double code = 0.0;
};

// Mean and standard deviation of every log-mel value in the set.
void MelMoments(const TrainingSet &data, double *mean, double *stddev);

class Trainer {
 public:
  // Takes ownership of the model; its trainable parameters are optimized.
  Trainer(std::unique_ptr<Autoencoder> model, const TrainConfig &config, const AudioConfig &audio,
          const TrainingSet *data);

  // Builds a fresh model. n_speakers is taken from the data, and when
  // mel_std is 1 and mel_mean 0 the normalization is set from MelMoments.
  static std::unique_ptr<Autoencoder> NewModel(ModelConfig config, const TrainingSet &data,
                                               uint64_t seed);

  // One optimizer step. Throws NumericError on a non-finite loss.
  LossRecord Step();

  // Runs until `iteration() == until`, calling `on_step` after each step.
  void Run(int64_t until, const std::function<void(const LossRecord &)> &on_step = {});

  Autoencoder &model() { return *model_; }
  std::unique_ptr<Autoencoder> ReleaseModel();
  int64_t iteration() const { return iteration_; }
  const TrainConfig &config() const { return config_; }

  // Speaker ids and F0 statistics in FormatStatsFile form, stored with the
  // checkpoint so that conversion can resolve speaker names.
  void set_speaker_table(const std::string &table) { speaker_table_ = table; }
  const std::string &speaker_table() const { return speaker_table_; }

  // Checkpoint: model config, train config, iteration, RNG state, speaker
  // table, parameters and Adam moments.
  void Save(std::ostream &os) const;
  void SaveFile(const std::string &path) const;
  // Restores a checkpoint written by Save. The stored model config must
  // equal this trainer's; a mismatch throws DataError naming the field.
  void Load(std::istream &is);
  void LoadFile(const std::string &path);

 private:
  std::unique_ptr<Autoencoder> model_;
  TrainConfig config_;
  AudioConfig audio_;
  const TrainingSet *data_;
  nn::Adam adam_;
  Rng rng_;
  int64_t iteration_ = 0;
  std::string speaker_table_;
};

// Model-only checkpoint I/O, used by conversion and evaluation.
struct LoadedModel {
  std::unique_ptr<Autoencoder> model;
  TrainConfig train_config;
  int64_t iteration = 0;
  std::string speaker_table;
};
LoadedModel LoadModelFile(const std::string &path);

// Names the first field that differs between two model configs, or "".
std::string ModelConfigDifference(const ModelConfig &a, const ModelConfig &b);

std::string LossCsvHeader();
std::string LossCsvRow(const LossRecord &r);

}  // namespace f0vc

#endif  // F0VC_TRAIN_TRAINER_H_
