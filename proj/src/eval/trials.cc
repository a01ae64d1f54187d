// src/eval/trials.cc

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

#include "vcfc/eval/trials.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "vcfc/core/matio.hpp"
#include "vcfc/core/parallel.hpp"

namespace vcfc::eval {

std::string trial_label_name(TrialLabel l) {
  switch (l) {
    case TrialLabel::genuine: return "genuine";
    case TrialLabel::imposter: return "imposter";
    case TrialLabel::spoof_vc: return "spoof-vc";
    case TrialLabel::spoof_vcfc: return "spoof-vcfc";
  }
  return "unknown";
}

TrialLabel trial_label_from_name(const std::string& name) {
  if (name == "genuine") return TrialLabel::genuine;
  if (name == "imposter") return TrialLabel::imposter;
  if (name == "spoof-vc") return TrialLabel::spoof_vc;
  if (name == "spoof-vcfc") return TrialLabel::spoof_vcfc;
  throw Error("unknown trial label: " + name);
}

void validate_protocol(const TrialProtocol& protocol,
                       const asv::BlackBoxVerifier& verifier) {
  std::set<std::string> seen;
  for (const Trial& t : protocol.trials) {
    if (!seen.insert(t.trial_id).second) {
      throw Error("duplicate trial id: " + t.trial_id);
    }
    if (!verifier.is_enrolled(t.target_speaker)) {
      throw Error("trial " + t.trial_id + " names unenrolled target " +
                  t.target_speaker);
    }
  }
}

std::vector<double> ScoreSet::scores_with_label(TrialLabel label) const {
  std::vector<double> out;
  for (const ScoredTrial& r : rows) {
    if (r.trial.label == label) out.push_back(r.score);
  }
  return out;
}

ScoreSet run_trials(const TrialProtocol& protocol,
                    const asv::BlackBoxVerifier& verifier,
                    const AudioResolver& resolver, asv::ScoreAuditLog* audit) {
  validate_protocol(protocol, verifier);
  const std::size_t n = protocol.trials.size();

  // Resolve all audio first so missing files fail as a batch, by trial id.
  std::vector<Waveform> audio(n);
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      audio[i] = resolver(protocol.trials[i].utt_ref);
    } catch (const Error&) {
      missing.push_back(protocol.trials[i].trial_id);
    }
  }
  if (!missing.empty()) {
    std::string msg = "run_trials: unresolvable audio for trials:";
    for (const std::string& id : missing) msg += " " + id;
    throw Error(msg);
  }

  std::vector<double> scores(n, 0.0);
  std::vector<char> ok(n, 0);
  par::parallel_for(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
    try {
      scores[static_cast<std::size_t>(i)] = verifier.blackbox_score(
          audio[static_cast<std::size_t>(i)],
          protocol.trials[static_cast<std::size_t>(i)].target_speaker);
      ok[static_cast<std::size_t>(i)] = 1;
    } catch (const OracleFailure&) {
      ok[static_cast<std::size_t>(i)] = 0;
    }
  });

  ScoreSet set;
  for (std::size_t i = 0; i < n; ++i) {
    if (ok[i]) {
      set.rows.push_back({protocol.trials[i], scores[i]});
      if (audit != nullptr) {
        audit->record(protocol.trials[i].trial_id,
                      protocol.trials[i].target_speaker, scores[i]);
      }
    } else {
      set.failed_trial_ids.push_back(protocol.trials[i].trial_id);
    }
  }
  return set;
}

void save_score_set(const std::string& path, const ScoreSet& set) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write score file: " + path);
  for (const auto& [key, value] : set.metadata) {
    os << "# " << key << ' ' << value << '\n';
  }
  if (!set.failed_trial_ids.empty()) {
    os << "# failed_trials " << set.failed_trial_ids.size();
    for (const std::string& id : set.failed_trial_ids) os << ' ' << id;
    os << '\n';
  }
  char buf[64];
  for (const ScoredTrial& r : set.rows) {
    std::snprintf(buf, sizeof(buf), "%.9f", r.score);
    os << r.trial.trial_id << ' ' << trial_label_name(r.trial.label) << ' '
       << buf << '\n';
  }
  if (!os) throw Error("short write to score file: " + path);
}

ScoreSet load_score_set(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open score file: " + path);
  ScoreSet set;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      if (hs >> key) {
        if (key == "failed_trials") {
          std::size_t count = 0;
          hs >> count;
          std::string id;
          while (hs >> id) set.failed_trial_ids.push_back(id);
        } else {
          std::string rest;
          std::getline(hs, rest);
          if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
          set.metadata[key] = rest;
        }
      }
      continue;
    }
    std::istringstream ls(line);
    ScoredTrial row;
    std::string label;
    if (!(ls >> row.trial.trial_id >> label >> row.score)) {
      throw Error("malformed score line in " + path + ": " + line);
    }
    row.trial.label = trial_label_from_name(label);
    set.rows.push_back(std::move(row));
  }
  return set;
}

void save_protocol(const std::string& path, const TrialProtocol& protocol) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write protocol: " + path);
  for (const Trial& t : protocol.trials) {
    os << t.trial_id << '\t' << t.target_speaker << '\t' << t.utt_ref << '\t'
       << trial_label_name(t.label) << '\n';
  }
  if (!os) throw Error("short write to protocol: " + path);
}

TrialProtocol load_protocol(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open protocol: " + path);
  TrialProtocol protocol;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Trial t;
    std::string label;
    if (!(std::getline(ls, t.trial_id, '\t') &&
          std::getline(ls, t.target_speaker, '\t') &&
          std::getline(ls, t.utt_ref, '\t') && std::getline(ls, label))) {
      throw Error("malformed protocol line in " + path + ": " + line);
    }
    t.label = trial_label_from_name(label);
    protocol.trials.push_back(std::move(t));
  }
  return protocol;
}

}  // namespace vcfc::eval
