// src/train/corpus.cc

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

#include "f0vc/train/corpus.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "f0vc/common/error.h"

namespace f0vc {

namespace fs = std::filesystem;

namespace {

uint64_t Fnv1a(const std::string &s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool HasWavExtension(const fs::path &p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".wav";
}

}  // namespace

const char *SplitName(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

int CorpusManifest::SpeakerIndex(const std::string &id) const {
  for (const auto &s : speakers)
    if (s.id == id) return s.index;
  throw DataError("unknown speaker: " + id);
}

std::vector<ManifestRecord> ScanCorpus(const std::string &root) {
  if (!fs::is_directory(root)) throw DataError("corpus root is not a directory: " + root);
  std::vector<std::string> speaker_dirs;
  for (const auto &entry : fs::directory_iterator(root))
    if (entry.is_directory()) speaker_dirs.push_back(entry.path().filename().string());
  std::sort(speaker_dirs.begin(), speaker_dirs.end());
  if (speaker_dirs.size() < 2)
    throw DataError("corpus needs at least 2 speaker directories, found " +
                    std::to_string(speaker_dirs.size()) + " in " + root);

  std::vector<ManifestRecord> records;
  for (const auto &spk : speaker_dirs) {
    std::vector<std::string> files;
    for (const auto &entry : fs::directory_iterator(fs::path(root) / spk))
      if (entry.is_regular_file() && HasWavExtension(entry.path()))
        files.push_back(entry.path().filename().string());
    if (files.empty()) throw DataError("speaker directory has no .wav files: " + spk);
    std::sort(files.begin(), files.end());

    std::vector<std::string> ranked = files;
    std::sort(ranked.begin(), ranked.end(), [](const std::string &a, const std::string &b) {
      const uint64_t ha = Fnv1a(a), hb = Fnv1a(b);
      return ha != hb ? ha < hb : a < b;
    });
    const size_t n_test = files.size() / 10;
    std::vector<std::string> test(ranked.begin(), ranked.begin() + n_test);
    for (const auto &f : files) {
      const bool is_test = std::find(test.begin(), test.end(), f) != test.end();
      records.push_back({spk, spk + "/" + f, is_test ? Split::kTest : Split::kTrain});
    }
  }
  return records;
}

std::string FormatManifest(const std::vector<ManifestRecord> &records) {
  std::ostringstream os;
  for (const auto &r : records)
    os << r.speaker_id << ' ' << r.path << ' ' << SplitName(r.split) << '\n';
  return os.str();
}

std::vector<ManifestRecord> ParseManifest(const std::string &text) {
  std::vector<ManifestRecord> records;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    ManifestRecord r;
    std::string split, extra;
    if (!(ls >> r.speaker_id >> r.path >> split) || (ls >> extra))
      throw DataError("manifest line " + std::to_string(line_no) + " is malformed: " + line);
    if (split == "train")
      r.split = Split::kTrain;
    else if (split == "test")
      r.split = Split::kTest;
    else
      throw DataError("manifest line " + std::to_string(line_no) + ": unknown split " + split);
    records.push_back(r);
  }
  return records;
}

CorpusManifest BuildManifest(const std::vector<ManifestRecord> &records) {
  CorpusManifest m;
  m.records = records;
  std::vector<std::string> ids;
  for (const auto &r : records) ids.push_back(r.speaker_id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (size_t i = 0; i < ids.size(); ++i) {
    SpeakerEntry e;
    e.id = ids[i];
    e.index = static_cast<int>(i);
    m.speakers.push_back(e);
  }
  std::vector<std::string> seen;
  for (const auto &r : records) {
    auto &spk = m.speakers[m.SpeakerIndex(r.speaker_id)];
    (r.split == Split::kTrain ? spk.train_paths : spk.test_paths).push_back(r.path);
    seen.push_back(r.path);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw DataError("manifest lists an utterance more than once");
  return m;
}

std::string FormatStatsFile(const CorpusManifest &manifest) {
  std::string out;
  for (const auto &s : manifest.speakers) out += FormatStatsRecord(s.id, s.stats) + "\n";
  return out;
}

void ApplyStatsFile(const std::string &text, CorpusManifest *manifest) {
  std::vector<bool> found(manifest->speakers.size(), false);
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::string id;
    const SpeakerF0Stats stats = ParseStatsRecord(line, &id);
    const int index = manifest->SpeakerIndex(id);
    manifest->speakers[index].stats = stats;
    found[index] = true;
  }
  for (size_t i = 0; i < found.size(); ++i)
    if (!found[i]) throw DataError("no F0 statistics for speaker " + manifest->speakers[i].id);
}

std::string FeatureStem(const std::string &work_dir, const std::string &relative_path) {
  fs::path p = fs::path(work_dir) / "features" / relative_path;
  p.replace_extension();
  return p.string();
}

std::string ReadTextFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string &path, const std::string &text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw DataError("cannot write " + tmp);
    os << text;
    if (!os) throw DataError("write failed: " + tmp);
  }
  fs::rename(tmp, p);
}

}  // namespace f0vc
