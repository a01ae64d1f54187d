// include/vcfc/harness/experiment.hpp

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
#include <string>
#include <vector>

#include "vcfc/asv/verifier.hpp"
#include "vcfc/eval/report.hpp"
#include "vcfc/eval/trials.hpp"
#include "vcfc/feedback/feedback.hpp"
#include "vcfc/harness/config.hpp"
#include "vcfc/harness/manifest.hpp"
#include "vcfc/harness/toy_corpus.hpp"
#include "vcfc/ppg/posterior_model.hpp"
#include "vcfc/vcnet/convert.hpp"
#include "vcfc/vcnet/train.hpp"

namespace vcfc::harness {

// Config -> module configuration adapters.
dsp::MelConfig mel_config_from(const Config& cfg);
dsp::MfccConfig content_mfcc_config_from(const Config& cfg);
asv::AsvConfig asv_config_from(const Config& cfg);
feedback::FeedbackConfig feedback_config_from(const Config& cfg);
vcnet::SynthesisConfig synthesis_config_from(const Config& cfg);
vcnet::OptimizerState optimizer_from(const Config& cfg);
ToyCorpusSpec corpus_spec_from(const Config& cfg);

// Seed streams derived from run.seed; keeping them fixed makes every phase
// independently reproducible.
enum class SeedStream : std::uint64_t {
  corpus = 1,
  ubm = 2,
  ppg = 3,
  net_init = 4,
  vc_train = 5,
  fc_train = 6,
};
std::uint64_t phase_seed(const Config& cfg, SeedStream stream,
                         std::uint64_t salt = 0);

// UBM + projection from the background speakers' train rows; no enrollments.
asv::BlackBoxVerifier train_verifier(const Manifest& manifest, const Config& cfg);

// Enrollment models for every target speaker, from their train rows.
void enroll_targets(asv::BlackBoxVerifier& verifier, const Manifest& manifest);

// Content model from background + target train rows.
ppg::PosteriorModel fit_content_model(const Manifest& manifest, const Config& cfg);

// Frame-aligned (posteriorgram, mel+deltas) pairs for one speaker and split.
std::vector<vcnet::TrainPair> build_vc_dataset(const Manifest& manifest,
                                               const std::string& speaker,
                                               const std::string& split,
                                               const ppg::PosteriorModel& content,
                                               const Config& cfg);

// Converts every trial-split utterance with the net and writes
// <out_dir>/<utt_id>.wav; returns utt_id -> wav path.
std::map<std::string, std::string> convert_trial_set(
    const Manifest& manifest, const vcnet::RecurrentConversionNet& net,
    const ppg::PosteriorModel& content, const Config& cfg,
    const std::string& out_dir);

// Full protocol: genuine (target validation rows), imposter (trial rows
// against every target) and optional spoof trials from converted audio maps
// (target -> utt_id -> path).
eval::TrialProtocol build_protocol(
    const Manifest& manifest,
    const std::map<std::string, std::map<std::string, std::string>>* vc_audio,
    const std::map<std::string, std::map<std::string, std::string>>* vcfc_audio);

eval::AudioResolver wav_resolver();

// The end-to-end A/B experiment: shared corpus/verifier/content model, one
// conversion model per target pretrained on the plain objective, then two
// identically seeded continuations (alpha = 0 and the configured alpha).
struct AttackExperimentResult {
  eval::ScoreSet scores;
  eval::AttackReport report;
  double mean_vc = 0.0;    // mean black-box score of spoof-vc trials
  double mean_vcfc = 0.0;  // mean black-box score of spoof-vcfc trials
  double eer_imposter = 0.0;
  double eer_vc = 0.0;
  double eer_vcfc = 0.0;
};

AttackExperimentResult run_attack_experiment(const Config& cfg,
                                             const std::string& work_dir);

}  // namespace vcfc::harness
