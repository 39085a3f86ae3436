// include/f0vc/eval/metrics.h

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

#ifndef F0VC_EVAL_METRICS_H_
#define F0VC_EVAL_METRICS_H_

#include <vector>

#include "f0vc/dsp/audio_config.h"
#include "f0vc/dsp/types.h"

namespace f0vc {

// Uniform bins over [log_lo, log_hi] in natural-log F0.
struct HistogramEdges {
  double log_lo = 0.0;
  double log_hi = 1.0;
  int bins = 64;

  // Spans the tracker's search range.
  static HistogramEdges FromAudio(const AudioConfig &cfg, int bins = 64);
  double BinCenter(int i) const;
  int BinOf(double log_f0) const;  // values outside the range go to the end bins
  bool operator==(const HistogramEdges &) const = default;
};

// Normalized histogram of voiced log-F0; unvoiced frames are skipped.
struct F0Histogram {
  HistogramEdges edges;
  std::vector<double> counts;
  std::vector<double> mass;  // counts / total, sums to 1
  double total = 0.0;
};

// Throws DataError when no frame is voiced.
F0Histogram BuildHistogram(const std::vector<F0Contour> &contours, const HistogramEdges &edges);
// Count-weighted union. Throws DataError on edge mismatch or empty input.
F0Histogram MergeHistograms(const std::vector<F0Histogram> &parts);

// Jensen-Shannon divergence in nats; 0 <= js <= ln 2.
double JsDivergence(const F0Histogram &a, const F0Histogram &b);

struct ConsistencyReport {
  std::vector<int> frames;        // frames voiced in both contours
  std::vector<double> reference;  // log-F0
  std::vector<double> converted;  // log-F0
  std::vector<double> errors;     // converted - reference
  int voiced_in_both = 0;
  int voicing_mismatch = 0;  // voiced in exactly one
  int total_frames = 0;

  bool empty() const { return errors.empty(); }
  double MismatchRate() const;
};

// Throws DataError when the contours differ in length.
ConsistencyReport ConsistencyError(const F0Contour &converted, const F0Contour &reference);

struct ErrorSummary {
  int count = 0;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
  double median_abs = 0.0;
  double mismatch_rate = 0.0;
};

// Pools the errors of several reports.
ErrorSummary Summarize(const std::vector<ConsistencyReport> &reports);

// Median of a non-empty list; the mean of the two middle values for even n.
double Median(std::vector<double> values);

// Pearson correlation. Throws DataError for fewer than 2 points, unequal
// lengths or a constant series.
double PearsonCorrelation(const std::vector<double> &x, const std::vector<double> &y);

// Population standard deviation of voiced log-F0; 0 for fewer than 2
// voiced frames.
double VoicedLogF0Std(const F0Contour &contour);

}  // namespace f0vc

#endif  // F0VC_EVAL_METRICS_H_
