// src/eval/metrics.cc

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

#include "f0vc/eval/metrics.h"

#include <algorithm>
#include <cmath>

#include "f0vc/common/error.h"

namespace f0vc {

HistogramEdges HistogramEdges::FromAudio(const AudioConfig &cfg, int bins) {
  return {std::log(cfg.f0_min), std::log(cfg.f0_max), bins};
}

double HistogramEdges::BinCenter(int i) const {
  return log_lo + (i + 0.5) * (log_hi - log_lo) / bins;
}

int HistogramEdges::BinOf(double log_f0) const {
  const int b = static_cast<int>(std::floor((log_f0 - log_lo) / (log_hi - log_lo) * bins));
  return std::clamp(b, 0, bins - 1);
}

F0Histogram BuildHistogram(const std::vector<F0Contour> &contours, const HistogramEdges &edges) {
  if (edges.bins < 1 || !(edges.log_hi > edges.log_lo)) throw UsageError("bad histogram edges");
  F0Histogram h;
  h.edges = edges;
  h.counts.assign(edges.bins, 0.0);
  for (const auto &c : contours)
    for (const auto &f : c)
      if (f.voiced && f.f0_hz > 0) {
        h.counts[edges.BinOf(std::log(f.f0_hz))] += 1.0;
        h.total += 1.0;
      }
  if (h.total == 0) throw DataError("F0 histogram: no voiced frames");
  h.mass.resize(edges.bins);
  for (int i = 0; i < edges.bins; ++i) h.mass[i] = h.counts[i] / h.total;
  return h;
}

F0Histogram MergeHistograms(const std::vector<F0Histogram> &parts) {
  if (parts.empty()) throw DataError("MergeHistograms: nothing to merge");
  F0Histogram h;
  h.edges = parts[0].edges;
  h.counts.assign(h.edges.bins, 0.0);
  for (const auto &p : parts) {
    if (!(p.edges == h.edges)) throw DataError("MergeHistograms: bin edges differ");
    for (int i = 0; i < h.edges.bins; ++i) h.counts[i] += p.counts[i];
    h.total += p.total;
  }
  if (h.total == 0) throw DataError("MergeHistograms: no voiced frames");
  h.mass.resize(h.edges.bins);
  for (int i = 0; i < h.edges.bins; ++i) h.mass[i] = h.counts[i] / h.total;
  return h;
}

double JsDivergence(const F0Histogram &a, const F0Histogram &b) {
  if (!(a.edges == b.edges) || a.mass.size() != b.mass.size())
    throw DataError("JsDivergence: histograms use different bin edges");
  double js = 0.0;
  for (size_t i = 0; i < a.mass.size(); ++i) {
    const double p = a.mass[i], q = b.mass[i], m = 0.5 * (p + q);
    if (p > 0) js += 0.5 * p * std::log(p / m);
    if (q > 0) js += 0.5 * q * std::log(q / m);
  }
  return std::max(js, 0.0);
}

double ConsistencyReport::MismatchRate() const {
  return total_frames == 0 ? 0.0 : static_cast<double>(voicing_mismatch) / total_frames;
}

ConsistencyReport ConsistencyError(const F0Contour &converted, const F0Contour &reference) {
  if (converted.size() != reference.size())
    throw DataError("ConsistencyError: " + std::to_string(converted.size()) +
                    " converted frames vs " + std::to_string(reference.size()) +
                    " reference frames");
  ConsistencyReport r;
  r.total_frames = static_cast<int>(converted.size());
  for (size_t t = 0; t < converted.size(); ++t) {
    const bool a = converted[t].voiced, b = reference[t].voiced;
    if (a && b) {
      const double c = std::log(converted[t].f0_hz), ref = std::log(reference[t].f0_hz);
      r.frames.push_back(static_cast<int>(t));
      r.converted.push_back(c);
      r.reference.push_back(ref);
      r.errors.push_back(c - ref);
      ++r.voiced_in_both;
    } else if (a != b) {
      ++r.voicing_mismatch;
    }
  }
  return r;
}

double Median(std::vector<double> values) {
  if (values.empty()) throw DataError("Median of an empty list");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

ErrorSummary Summarize(const std::vector<ConsistencyReport> &reports) {
  ErrorSummary s;
  std::vector<double> all, abs_all;
  int mismatch = 0, total = 0;
  for (const auto &r : reports) {
    all.insert(all.end(), r.errors.begin(), r.errors.end());
    mismatch += r.voicing_mismatch;
    total += r.total_frames;
  }
  s.mismatch_rate = total == 0 ? 0.0 : static_cast<double>(mismatch) / total;
  s.count = static_cast<int>(all.size());
  if (all.empty()) return s;
  // Sorting first makes the sums independent of report order.
  std::sort(all.begin(), all.end());
  double sum = 0.0;
  for (double e : all) sum += e;
  s.mean = sum / all.size();
  double var = 0.0;
  for (double e : all) var += (e - s.mean) * (e - s.mean);
  s.stddev = std::sqrt(var / all.size());
  s.median = Median(all);
  for (double e : all) abs_all.push_back(std::abs(e));
  s.median_abs = Median(abs_all);
  return s;
}

double PearsonCorrelation(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size()) throw DataError("PearsonCorrelation: series differ in length");
  if (x.size() < 2) throw DataError("PearsonCorrelation: need at least 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0) throw DataError("PearsonCorrelation: constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double VoicedLogF0Std(const F0Contour &contour) {
  std::vector<double> v;
  for (const auto &f : contour)
    if (f.voiced && f.f0_hz > 0) v.push_back(std::log(f.f0_hz));
  if (v.size() < 2) return 0.0;
  double m = 0;
  for (double x : v) m += x;
  m /= v.size();
  double var = 0;
  for (double x : v) var += (x - m) * (x - m);
  return std::sqrt(var / v.size());
}

}  // namespace f0vc
