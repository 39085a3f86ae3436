// src/eval/report.cc

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

#include "f0vc/eval/report.h"

#include <cstdio>
#include <sstream>

#include "f0vc/train/corpus.h"

namespace f0vc {

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void WriteHistogramCsv(const std::string &path,
                       const std::vector<std::pair<std::string, const F0Histogram *>> &series) {
  std::ostringstream os;
  os << "bin_center,mass,series\n";
  for (const auto &[name, h] : series)
    for (int i = 0; i < h->edges.bins; ++i)
      os << Num(std::exp(h->edges.BinCenter(i))) << ',' << Num(h->mass[i]) << ',' << name << '\n';
  WriteTextFile(path, os.str());
}

void WriteConsistencyCsv(const std::string &path, const StudyResult &study,
                         const std::vector<std::string> &speaker_ids) {
  std::ostringstream os;
  os << "pair,frame,reference,converted,error\n";
  for (const auto &o : study.outcomes) {
    const std::string label = PairLabel(o, speaker_ids);
    const auto &c = o.consistency;
    for (size_t k = 0; k < c.errors.size(); ++k)
      os << label << ',' << c.frames[k] << ',' << Num(c.reference[k]) << ',' << Num(c.converted[k])
         << ',' << Num(c.errors[k]) << '\n';
  }
  WriteTextFile(path, os.str());
}

void WriteLeakageCsv(const std::string &path, const std::vector<LeakageRow> &rows) {
  std::ostringstream os;
  os << "pair,corr_input,corr_pseudo\n";
  for (const auto &r : rows)
    os << r.pair << ',' << Num(r.corr_input) << ',' << Num(r.corr_pseudo) << '\n';
  WriteTextFile(path, os.str());
}

void WriteFlatCsv(const std::string &path, const FlatReport &report) {
  std::ostringstream os;
  os << "pair,natural_std,flat_std\n";
  for (const auto &r : report.rows)
    os << r.pair << ',' << Num(r.natural_std) << ',' << Num(r.flat_std) << '\n';
  WriteTextFile(path, os.str());
}

nlohmann::json DirectionJson(const DirectionSummary &d) {
  return {{"direction", d.direction},
          {"conversions", d.conversions},
          {"js_divergence", d.js},
          {"consistency",
           {{"frames", d.consistency.count},
            {"mean", d.consistency.mean},
            {"median", d.consistency.median},
            {"std", d.consistency.stddev},
            {"median_abs", d.consistency.median_abs},
            {"voicing_mismatch_rate", d.consistency.mismatch_rate}}},
          {"median_voiced_log_f0_std", d.median_voiced_std}};
}

nlohmann::json StudyJson(const StudyResult &study) {
  nlohmann::json dirs = nlohmann::json::array();
  for (const auto &d : study.directions) dirs.push_back(DirectionJson(d));
  return {{"conversions", study.outcomes.size()}, {"directions", dirs}};
}

nlohmann::json LeakageJson(const LeakageReport &report) {
  return {{"no_f0_decoder",
           {{"utterances", report.no_f0_rows.size()},
            {"mean_abs_corr_input", report.no_f0_abs_corr_input}}},
          {"f0_model",
           {{"utterances", report.f0_rows.size()}, {"mean_corr_pseudo", report.f0_corr_pseudo}}}};
}

nlohmann::json FlatJson(const FlatReport &report) {
  return {{"utterances", report.rows.size()},
          {"median_std_ratio", report.median_ratio},
          {"median_natural_std", report.median_natural_std},
          {"median_flat_std", report.median_flat_std}};
}

}  // namespace f0vc
