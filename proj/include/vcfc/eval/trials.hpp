// include/vcfc/eval/trials.hpp

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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "vcfc/asv/verifier.hpp"
#include "vcfc/core/types.hpp"

namespace vcfc::eval {

enum class TrialLabel { genuine, imposter, spoof_vc, spoof_vcfc };

std::string trial_label_name(TrialLabel l);
TrialLabel trial_label_from_name(const std::string& name);

struct Trial {
  std::string trial_id;
  std::string target_speaker;
  std::string utt_ref;  // resolved to audio by the caller's resolver
  TrialLabel label = TrialLabel::genuine;
};

struct TrialProtocol {
  std::vector<Trial> trials;
};

// Unique trial ids; every referenced target must be enrolled.
void validate_protocol(const TrialProtocol& protocol,
                       const asv::BlackBoxVerifier& verifier);

struct ScoredTrial {
  Trial trial;
  double score = 0.0;
};

struct ScoreSet {
  std::vector<ScoredTrial> rows;
  // Trials the verifier could not score (e.g. VAD rejected every frame);
  // excluded from error rates but surfaced in reports.
  std::vector<std::string> failed_trial_ids;
  std::map<std::string, std::string> metadata;  // system tag, seed, config hash

  std::vector<double> scores_with_label(TrialLabel label) const;
};

using AudioResolver = std::function<Waveform(const std::string& utt_ref)>;

// Scores every trial through blackbox_score. All references are resolved
// up front; unresolvable ones abort with the offending trial ids. Trials are
// independent and scored in parallel, merged in protocol order.
ScoreSet run_trials(const TrialProtocol& protocol,
                    const asv::BlackBoxVerifier& verifier,
                    const AudioResolver& resolver,
                    asv::ScoreAuditLog* audit = nullptr);

// "trial_id label score" lines with "# key value" metadata headers.
void save_score_set(const std::string& path, const ScoreSet& set);
ScoreSet load_score_set(const std::string& path);

void save_protocol(const std::string& path, const TrialProtocol& protocol);
TrialProtocol load_protocol(const std::string& path);

}  // namespace vcfc::eval
