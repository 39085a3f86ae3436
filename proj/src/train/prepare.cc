// src/train/prepare.cc

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

#include "f0vc/train/prepare.h"

#include <cstdio>
#include <filesystem>

#include "f0vc/common/error.h"
#include "f0vc/common/rng.h"
#include "f0vc/dsp/matrix_io.h"
#include "f0vc/dsp/pitch.h"
#include "f0vc/dsp/spectral.h"
#include "f0vc/dsp/wav.h"

namespace f0vc {

namespace fs = std::filesystem;

void SynthesizeToyCorpus(const std::string &root, const std::vector<VoiceProfile> &voices,
                         int utterances_per_speaker, double min_s, double max_s, uint64_t seed,
                         int sample_rate) {
  if (utterances_per_speaker < 1) throw UsageError("need at least one utterance per speaker");
  for (size_t v = 0; v < voices.size(); ++v) {
    // One stream per voice so that adding voices leaves earlier ones intact.
    Rng rng(seed * 1000003ULL + v);
    const fs::path dir = fs::path(root) / voices[v].id;
    fs::create_directories(dir);
    for (int i = 0; i < utterances_per_speaker; ++i) {
      const double dur = rng.Uniform(min_s, max_s);
      const SynthResult r = SynthesizeUtterance(voices[v], dur, rng, sample_rate);
      char name[64];
      std::snprintf(name, sizeof name, "%s_%03d.wav", voices[v].id.c_str(), i);
      SaveWav((dir / name).string(), r.wave);
    }
  }
}

std::string ManifestPath(const std::string &work_dir) {
  return (fs::path(work_dir) / "manifest.txt").string();
}
std::string StatsPath(const std::string &work_dir) {
  return (fs::path(work_dir) / "stats.txt").string();
}

CorpusManifest PrepareCorpus(const std::string &root, const std::string &work_dir,
                             const AudioConfig &audio) {
  audio.Validate();
  const std::vector<ManifestRecord> records = ScanCorpus(root);
  CorpusManifest manifest = BuildManifest(records);
  std::vector<std::vector<F0Contour>> train_contours(manifest.speakers.size());
  for (const auto &r : records) {
    const Waveform wave = LoadWav((fs::path(root) / r.path).string(), audio.sample_rate);
    const MelSpectrogram mel = ComputeMelSpectrogram(wave, audio);
    const F0Contour f0 = ExtractF0(wave, audio);
    if (static_cast<int>(f0.size()) != mel.NumFrames())
      throw DataError("frame count mismatch between mel and F0 for " + r.path);
    const std::string stem = FeatureStem(work_dir, r.path);
    fs::create_directories(fs::path(stem).parent_path());
    WriteMatrix(stem + ".mel", mel.frames);
    WriteMatrix(stem + ".f0", ContourToMatrix(f0));
    if (r.split == Split::kTrain) train_contours[manifest.SpeakerIndex(r.speaker_id)].push_back(f0);
  }
  for (auto &s : manifest.speakers) {
    try {
      s.stats = ComputeStats(train_contours[s.index]);
    } catch (const DataError &e) {
      throw DataError("F0 statistics for speaker " + s.id + ": " + e.what());
    }
  }
  WriteTextFile(ManifestPath(work_dir), FormatManifest(records));
  WriteTextFile(StatsPath(work_dir), FormatStatsFile(manifest));
  return manifest;
}

CorpusManifest LoadPreparedManifest(const std::string &work_dir) {
  CorpusManifest m = BuildManifest(ParseManifest(ReadTextFile(ManifestPath(work_dir))));
  ApplyStatsFile(ReadTextFile(StatsPath(work_dir)), &m);
  return m;
}

UtteranceFeatures LoadFeatures(const std::string &work_dir, const CorpusManifest &manifest,
                               const ManifestRecord &record) {
  const std::string stem = FeatureStem(work_dir, record.path);
  UtteranceFeatures u;
  u.speaker = manifest.SpeakerIndex(record.speaker_id);
  u.path = record.path;
  u.mel = ReadMatrix(stem + ".mel");
  u.f0 = MatrixToContour(ReadMatrix(stem + ".f0"));
  if (u.mel.rows() != static_cast<Eigen::Index>(u.f0.size()))
    throw DataError("cached features disagree on frame count for " + record.path);
  return u;
}

TrainingSet LoadSplit(const std::string &work_dir, const CorpusManifest &manifest, Split split) {
  TrainingSet set;
  for (const auto &s : manifest.speakers) set.stats.push_back(s.stats);
  for (const auto &r : manifest.records)
    if (r.split == split) set.utterances.push_back(LoadFeatures(work_dir, manifest, r));
  return set;
}

}  // namespace f0vc
