// include/f0vc/train/prepare.h

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

#ifndef F0VC_TRAIN_PREPARE_H_
#define F0VC_TRAIN_PREPARE_H_

#include <string>
#include <vector>

#include "f0vc/dsp/audio_config.h"
#include "f0vc/dsp/voice_synth.h"
#include "f0vc/train/corpus.h"
#include "f0vc/train/trainer.h"

namespace f0vc {

// Writes <root>/<voice id>/<voice id>_NNN.wav for every voice. Durations are
// uniform in [min_s, max_s].
void SynthesizeToyCorpus(const std::string &root, const std::vector<VoiceProfile> &voices,
                         int utterances_per_speaker, double min_s, double max_s, uint64_t seed,
                         int sample_rate = 16000);

// Work-dir layout written by PrepareCorpus.
std::string ManifestPath(const std::string &work_dir);
std::string StatsPath(const std::string &work_dir);

// Scans the corpus, caches log-mel and F0 per utterance under
// <work>/features, computes per-speaker F0 statistics from the training
// split and writes manifest.txt and stats.txt. Never writes under `root`.
CorpusManifest PrepareCorpus(const std::string &root, const std::string &work_dir,
                             const AudioConfig &audio);

// Reads manifest.txt and stats.txt from a prepared work dir.
CorpusManifest LoadPreparedManifest(const std::string &work_dir);

UtteranceFeatures LoadFeatures(const std::string &work_dir, const CorpusManifest &manifest,
                               const ManifestRecord &record);

// Utterances of one split with speaker stats attached.
TrainingSet LoadSplit(const std::string &work_dir, const CorpusManifest &manifest, Split split);

}  // namespace f0vc

#endif  // F0VC_TRAIN_PREPARE_H_
