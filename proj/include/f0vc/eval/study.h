// include/f0vc/eval/study.h

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

#ifndef F0VC_EVAL_STUDY_H_
#define F0VC_EVAL_STUDY_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "f0vc/eval/metrics.h"
#include "f0vc/model/autoencoder.h"
#include "f0vc/train/trainer.h"

namespace f0vc {

// Splits speakers into a low and a high F0 group by mean log-F0: the lower
// floor(n/2) speakers are "low".
struct SpeakerGroups {
  std::vector<int> group;  // 0 = low, 1 = high, per speaker index

  static SpeakerGroups FromStats(const std::vector<SpeakerF0Stats> &stats);
  static const char *Name(int g) { return g == 0 ? "low" : "high"; }
  std::string Direction(int src, int tgt) const;
};

enum class PairSet { kCrossGroup, kAll };

struct ConversionPair {
  int src = 0;
  int tgt = 0;
  size_t utterance = 0;   // index into the held-out set
  std::string direction;  // e.g. "low->high"
};

// Every held-out utterance converted to every other speaker (cross-group
// only, or all speakers including itself).
std::vector<ConversionPair> PlanConversions(const TrainingSet &held_out,
                                            const SpeakerGroups &groups, PairSet pairs);

// Griffin-Lim resynthesis followed by F0 tracking.
F0Contour AnalyzeMel(const Matrix &mel, const AudioConfig &audio, int gl_iters);

// Ground-truth contours per speaker, analyzed through the same Griffin-Lim
// path as converted speech so that tracker and vocoder bias cancel.
std::vector<std::vector<F0Contour>> GroundTruthContours(const TrainingSet &held_out,
                                                        const AudioConfig &audio, int gl_iters);

struct ConversionOutcome {
  ConversionPair pair;
  std::string utterance_path;
  F0Contour input;
  F0Contour pseudo;  // input de-normalized with the target statistics
  F0Contour converted;
  ConsistencyReport consistency;
};

std::string PairLabel(const ConversionOutcome &o, const std::vector<std::string> &speaker_ids);

struct DirectionSummary {
  std::string direction;
  int conversions = 0;
  F0Histogram converted;
  F0Histogram ground_truth;  // target speakers' held-out speech
  double js = 0.0;
  ErrorSummary consistency;
  double median_voiced_std = 0.0;  // per-utterance voiced log-F0 std
};

struct StudyOptions {
  F0Mode mode = f0mode::Natural{};
  PairSet pairs = PairSet::kCrossGroup;
  int gl_iters = 32;
  HistogramEdges edges;
};

struct StudyResult {
  std::vector<ConversionOutcome> outcomes;
  std::vector<DirectionSummary> directions;  // sorted by direction name
};

std::string ModeName(const F0Mode &mode);

// Converts, resynthesizes and tracks every planned pair, then aggregates.
StudyResult RunConversionStudy(Autoencoder &model, const TrainingSet &held_out,
                               const std::vector<std::vector<F0Contour>> &ground_truth,
                               const AudioConfig &audio, const StudyOptions &options);

// Per-direction aggregates. The result does not depend on outcome order.
std::vector<DirectionSummary> AggregateByDirection(
    const std::vector<ConversionOutcome> &outcomes,
    const std::vector<std::vector<F0Contour>> &ground_truth, const HistogramEdges &edges);

// ---- flat-F0 controllability ----

struct FlatRow {
  std::string pair;
  double natural_std = 0.0;  // voiced log-F0 std of the converted speech
  double flat_std = 0.0;
};

struct FlatReport {
  std::vector<FlatRow> rows;  // conversions with a non-zero natural std
  double median_ratio = 0.0;  // median over rows of flat_std / natural_std
  double median_natural_std = 0.0;
  double median_flat_std = 0.0;
};

// Pairs the outcomes of the same conversions run under natural and flat
// conditioning. Throws DataError when the studies do not line up or no
// conversion has a voiced natural output.
FlatReport CompareFlat(const StudyResult &natural, const StudyResult &flat,
                       const std::vector<std::string> &speaker_ids);

// ---- bottleneck leakage ----

struct LeakageRow {
  std::string pair;
  double corr_input = 0.0;   // corr(converted, input) in log-F0
  double corr_pseudo = 0.0;  // corr(converted, pseudo-F0) in log-F0
};

// Correlations over frames voiced in the converted, input and pseudo
// contours. Empty when fewer than `min_frames` frames qualify or a series
// is constant.
std::optional<LeakageRow> CorrelationRow(const ConversionOutcome &o, const std::string &label,
                                         int min_frames = 10);

struct LeakageReport {
  std::vector<LeakageRow> no_f0_rows;
  std::vector<LeakageRow> f0_rows;
  double no_f0_abs_corr_input = 0.0;  // mean |corr| over no-F0 rows
  double f0_corr_pseudo = 0.0;        // mean corr over F0-model rows
};

LeakageReport CompareLeakage(const std::vector<LeakageRow> &no_f0_rows,
                             const std::vector<LeakageRow> &f0_rows);

// A decoder without F0 input attached to a frozen copy of the F0 model's
// encoder. Decoder parameters are freshly initialized from `seed`.
std::unique_ptr<Autoencoder> MakeLeakageModel(const Autoencoder &f0_model, uint64_t seed);

// True when every "encoder." tensor of `a` exists in `b` with equal values.
bool SameEncoder(const Autoencoder &a, const Autoencoder &b);

}  // namespace f0vc

#endif  // F0VC_EVAL_STUDY_H_
