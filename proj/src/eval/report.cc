// src/eval/report.cc

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

#include "vcfc/eval/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vcfc::eval {

namespace {

struct GroupScores {
  std::vector<double> genuine, imposter, vc, vcfc;
};

void append_scores(GroupScores& g, const ScoredTrial& row) {
  switch (row.trial.label) {
    case TrialLabel::genuine: g.genuine.push_back(row.score); break;
    case TrialLabel::imposter: g.imposter.push_back(row.score); break;
    case TrialLabel::spoof_vc: g.vc.push_back(row.score); break;
    case TrialLabel::spoof_vcfc: g.vcfc.push_back(row.score); break;
  }
}

AttackReportRow make_row(const std::string& name, const GroupScores& g) {
  AttackReportRow row;
  row.group = name;
  row.n_genuine = static_cast<long>(g.genuine.size());
  if (g.genuine.empty()) {
    row.note = "no genuine trials; group omitted";
    return row;
  }
  std::string missing;
  auto col = [&](const std::vector<double>& attack,
                 const char* tag) -> std::optional<double> {
    if (attack.empty()) {
      missing += missing.empty() ? tag : std::string(", ") + tag;
      return std::nullopt;
    }
    return compute_eer(g.genuine, attack).eer;
  };
  row.eer_imposter = col(g.imposter, "imposter");
  row.eer_vc = col(g.vc, "spoof-vc");
  row.eer_vcfc = col(g.vcfc, "spoof-vcfc");
  if (!missing.empty()) row.note = "missing labels: " + missing;
  return row;
}

std::string fmt_cell(const std::optional<double>& eer) {
  if (!eer) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * *eer);
  return buf;
}

}  // namespace

AttackReport attack_report(const ScoreSet& scores,
                           const std::map<std::string, std::string>& speaker_sex) {
  GroupScores male, female, overall;
  for (const ScoredTrial& row : scores.rows) {
    append_scores(overall, row);
    const auto it = speaker_sex.find(row.trial.target_speaker);
    if (it == speaker_sex.end()) continue;
    if (it->second == "m") {
      append_scores(male, row);
    } else if (it->second == "f") {
      append_scores(female, row);
    }
  }
  AttackReport report;
  report.failed_trials = static_cast<long>(scores.failed_trial_ids.size());
  report.rows.push_back(make_row("male", male));
  report.rows.push_back(make_row("female", female));
  report.rows.push_back(make_row("overall", overall));
  return report;
}

std::string render_attack_report(const AttackReport& report) {
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-8s %10s %10s %10s\n", "group", "imposter",
                "spoof-vc", "spoof-vcfc");
  os << "EER (%) by attack\n" << buf;
  for (const AttackReportRow& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "%-8s %10s %10s %10s", row.group.c_str(),
                  fmt_cell(row.eer_imposter).c_str(), fmt_cell(row.eer_vc).c_str(),
                  fmt_cell(row.eer_vcfc).c_str());
    os << buf;
    if (!row.note.empty()) os << "   (" << row.note << ")";
    os << '\n';
  }
  if (report.failed_trials > 0) {
    os << "excluded failed trials: " << report.failed_trials << '\n';
  }
  return os.str();
}

std::string render_attack_report_tsv(const AttackReport& report) {
  std::ostringstream os;
  char buf[32];
  for (const AttackReportRow& row : report.rows) {
    const std::pair<const char*, const std::optional<double>*> cells[] = {
        {"imposter", &row.eer_imposter},
        {"spoof-vc", &row.eer_vc},
        {"spoof-vcfc", &row.eer_vcfc},
    };
    for (const auto& [tag, eer] : cells) {
      if (!*eer) continue;
      std::snprintf(buf, sizeof(buf), "%.6f", **eer);
      os << row.group << '\t' << tag << '\t' << buf << '\n';
    }
  }
  return os.str();
}

Histogram score_histograms(const std::vector<ScoreSet>& sets,
                           const std::vector<std::string>& names, int bins) {
  check(bins >= 2, "histograms need at least 2 bins");
  check(sets.size() == names.size(), "histogram sets/names mismatch");
  check(!sets.empty(), "no score sets to histogram");

  Histogram h;
  h.bins = bins;
  h.set_names = names;

  bool any = false;
  for (const ScoreSet& s : sets) {
    for (const ScoredTrial& r : s.rows) {
      if (!any) {
        h.lo = h.hi = r.score;
        any = true;
      } else {
        h.lo = std::min(h.lo, r.score);
        h.hi = std::max(h.hi, r.score);
      }
    }
  }
  check(any, "no scores to histogram");
  if (h.hi == h.lo) h.hi = h.lo + 1e-9;  // degenerate axis

  const double width = (h.hi - h.lo) / bins;
  for (const ScoreSet& s : sets) {
    std::vector<long> counts(static_cast<std::size_t>(bins), 0);
    double mean = 0.0;
    for (const ScoredTrial& r : s.rows) {
      int b = static_cast<int>((r.score - h.lo) / width);
      if (b >= bins) b = bins - 1;  // closed last bin
      if (b < 0) b = 0;
      ++counts[static_cast<std::size_t>(b)];
      mean += r.score;
    }
    const double n = static_cast<double>(s.rows.size());
    mean = n > 0 ? mean / n : 0.0;
    double var = 0.0;
    for (const ScoredTrial& r : s.rows) {
      var += (r.score - mean) * (r.score - mean);
    }
    var = n > 0 ? var / n : 0.0;
    h.counts.push_back(std::move(counts));
    h.means.push_back(mean);
    h.stddevs.push_back(std::sqrt(var));
  }
  return h;
}

void write_histograms(const std::string& path, const Histogram& h) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write histogram file: " + path);
  char buf[128];
  for (std::size_t s = 0; s < h.set_names.size(); ++s) {
    std::snprintf(buf, sizeof(buf), "# set %s mean %.9f stddev %.9f\n",
                  h.set_names[s].c_str(), h.means[s], h.stddevs[s]);
    os << buf;
  }
  const double width = (h.hi - h.lo) / h.bins;
  for (int b = 0; b < h.bins; ++b) {
    std::snprintf(buf, sizeof(buf), "%.9f %.9f", h.lo + b * width,
                  h.lo + (b + 1) * width);
    os << buf;
    for (const auto& counts : h.counts) {
      os << ' ' << counts[static_cast<std::size_t>(b)];
    }
    os << '\n';
  }
  if (!os) throw Error("short write to histogram file: " + path);
}

}  // namespace vcfc::eval
