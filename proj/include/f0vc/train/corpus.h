// include/f0vc/train/corpus.h

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

#ifndef F0VC_TRAIN_CORPUS_H_
#define F0VC_TRAIN_CORPUS_H_

#include <map>
#include <string>
#include <vector>

#include "f0vc/codec/f0_codec.h"
#include "f0vc/common/matrix.h"
#include "f0vc/dsp/types.h"

namespace f0vc {

enum class Split { kTrain, kTest };

const char *SplitName(Split split);

// One manifest line: "<speaker_id> <relative path> <train|test>".
struct ManifestRecord {
  std::string speaker_id;
  std::string path;  // relative to the corpus root
  Split split = Split::kTrain;

  bool operator==(const ManifestRecord &) const = default;
};

struct SpeakerEntry {
  std::string id;
  int index = 0;
  SpeakerF0Stats stats;
  std::vector<std::string> train_paths;
  std::vector<std::string> test_paths;
};

// Speakers sorted by id; indices are dense 0..N-1 in that order.
struct CorpusManifest {
  std::vector<ManifestRecord> records;
  std::vector<SpeakerEntry> speakers;

  int SpeakerIndex(const std::string &id) const;  // DataError if unknown
  int NumSpeakers() const { return static_cast<int>(speakers.size()); }
};

// Scans <root>/<speaker_id>/*.wav and assigns roughly 10% of each speaker's
// files to the test split, chosen by ranking a hash of the file name.
// Throws DataError for an empty speaker directory or fewer than 2 speakers.
std::vector<ManifestRecord> ScanCorpus(const std::string &root);

std::string FormatManifest(const std::vector<ManifestRecord> &records);
std::vector<ManifestRecord> ParseManifest(const std::string &text);

// Groups records by speaker. Stats are left empty.
CorpusManifest BuildManifest(const std::vector<ManifestRecord> &records);

// Stats file: one FormatStatsRecord line per speaker.
std::string FormatStatsFile(const CorpusManifest &manifest);
void ApplyStatsFile(const std::string &text, CorpusManifest *manifest);

// Cached features for one utterance.
struct UtteranceFeatures {
  int speaker = 0;
  std::string path;
  Matrix mel;  // T x 80
  F0Contour f0;
};

// Feature cache path for a corpus-relative wav path, e.g.
// "spk/a.wav" -> "<work>/features/spk/a".
std::string FeatureStem(const std::string &work_dir, const std::string &relative_path);

std::string ReadTextFile(const std::string &path);
// Writes atomically through a temporary file.
void WriteTextFile(const std::string &path, const std::string &text);

}  // namespace f0vc

#endif  // F0VC_TRAIN_CORPUS_H_
