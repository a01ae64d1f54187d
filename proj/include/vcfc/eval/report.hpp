// include/vcfc/eval/report.hpp

// Copyright 2026  The vcfc authors

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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcfc/eval/eer.hpp"
#include "vcfc/eval/trials.hpp"

namespace vcfc::eval {

struct AttackReportRow {
  std::string group;  // "male", "female", "overall"
  std::optional<double> eer_imposter;
  std::optional<double> eer_vc;
  std::optional<double> eer_vcfc;
  long n_genuine = 0;
  std::string note;  // set when a column is missing for the group
};

struct AttackReport {
  std::vector<AttackReportRow> rows;
  long failed_trials = 0;
};

// EER per attack per group (groups come from the target speaker's sex tag;
// "overall" pools every trial). Each attack column is scored against the
// genuine trials of the same group.
AttackReport attack_report(const ScoreSet& scores,
                           const std::map<std::string, std::string>& speaker_sex);

std::string render_attack_report(const AttackReport& report);

// Machine-readable variant: one "group<TAB>attack<TAB>eer" line per cell.
std::string render_attack_report_tsv(const AttackReport& report);

struct Histogram {
  double lo = 0.0, hi = 0.0;
  std::vector<std::string> set_names;
  std::vector<std::vector<long>> counts;  // [set][bin]
  std::vector<double> means, stddevs;
  int bins = 0;
};

// Shared-axis histograms over several score sets; the last bin is closed.
Histogram score_histograms(const std::vector<ScoreSet>& sets,
                           const std::vector<std::string>& names, int bins);

// "bin_low bin_high count_set1 count_set2 ..." rows, one comment line of
// mean/stddev per set.
void write_histograms(const std::string& path, const Histogram& h);

}  // namespace vcfc::eval
