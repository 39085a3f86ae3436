// include/f0vc/eval/report.h

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

#ifndef F0VC_EVAL_REPORT_H_
#define F0VC_EVAL_REPORT_H_

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "f0vc/eval/study.h"

namespace f0vc {

// bin_center,mass,series
void WriteHistogramCsv(const std::string &path,
                       const std::vector<std::pair<std::string, const F0Histogram *>> &series);

// pair,frame,reference,converted,error (log-F0)
void WriteConsistencyCsv(const std::string &path, const StudyResult &study,
                         const std::vector<std::string> &speaker_ids);

// pair,corr_input,corr_pseudo
void WriteLeakageCsv(const std::string &path, const std::vector<LeakageRow> &rows);

// pair,natural_std,flat_std
void WriteFlatCsv(const std::string &path, const FlatReport &report);

nlohmann::json DirectionJson(const DirectionSummary &d);
nlohmann::json StudyJson(const StudyResult &study);
nlohmann::json LeakageJson(const LeakageReport &report);
nlohmann::json FlatJson(const FlatReport &report);

}  // namespace f0vc

#endif  // F0VC_EVAL_REPORT_H_
