// include/vcfc/feedback/feedback.hpp

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
#include <optional>
#include <vector>

#include "vcfc/core/rng.hpp"
#include "vcfc/core/score_oracle.hpp"
#include "vcfc/core/types.hpp"
#include "vcfc/vcnet/convert.hpp"
#include "vcfc/vcnet/train.hpp"

namespace vcfc::feedback {

enum class SvTransform {
  one_minus,  // 1 - normalized score
  neg_log,    // -log(max(normalized, 1e-6))
};

struct FeedbackConfig {
  double alpha = 0.7;           // weight of the verifier loss
  int probes = 8;               // antithetic probe pairs per step
  double probe_scale = 0.05;    // perturbation magnitude in feature units
  double score_floor = -1.0;    // cosine range used for normalization
  double score_ceiling = 1.0;
  SvTransform transform = SvTransform::one_minus;
  int synth_iters = 8;          // Griffin-Lim iterations inside training
};

// Affine map of the raw score onto [0, 1], clamped.
double normalize_score(double raw, const FeedbackConfig& cfg);

// Negative-scale transform of a normalized score; in [0, 1] for one_minus.
double loss_sv(double normalized, const FeedbackConfig& cfg);

// (1 - alpha) * loss_vc + alpha * loss_sv, exactly.
double combined_loss(double loss_vc, double loss_sv, double alpha);

struct FeedbackStepTrace {
  long step_index = 0;
  double loss_vc = 0.0;
  std::optional<double> loss_sv;
  double combined_loss = 0.0;
  std::optional<double> raw_score;         // mean over the minibatch
  std::optional<double> normalized_score;  // mean over the minibatch
  int probe_pairs_used = 0;
  double sv_grad_norm = 0.0;
  double grad_norm = 0.0;
};

// A scalar loss over a list of per-utterance feature matrices. May throw
// OracleFailure; the failing probe pair is dropped.
using FeatureLoss = std::function<double(const std::vector<Matrix>&)>;

struct SpsaEstimate {
  std::vector<Matrix> grads;  // one per input matrix
  int pairs_used = 0;
  bool degraded = false;  // all pairs failed; gradient is zero
};

// Simultaneous-perturbation estimate of dL/dY averaged over antithetic
// Rademacher pairs: mean of [L(y + s*D) - L(y - s*D)] / (2s) * D. The 2*pairs
// evaluations run in parallel; contributions are combined in pair order.
SpsaEstimate estimate_sv_gradient(const FeatureLoss& loss,
                                  const std::vector<Matrix>& features,
                                  int pairs, double sigma, Rng& rng);

// Everything the feedback loop needs to turn predicted features into a
// scored waveform. Only the ScoreOracle interface touches the verifier.
struct FeedbackEnv {
  const vcnet::FeatureSynthesizer* synthesizer = nullptr;
  const ScoreOracle* oracle = nullptr;
};

// One joint training step on a minibatch. With alpha == 0 this runs the plain
// conversion step byte for byte (no oracle queries, no probe randomness).
FeedbackStepTrace feedback_train_step(vcnet::RecurrentConversionNet& net,
                                      const std::vector<vcnet::TrainPair>& dataset,
                                      const std::vector<int>& batch,
                                      const FeedbackEnv& env,
                                      vcnet::OptimizerState& opt,
                                      const FeedbackConfig& cfg, Rng& probe_rng);

// Feedback-controlled training over shuffled minibatches. The schedule RNG is
// seeded exactly as in vcnet::train_vc, so alpha = 0 reproduces it bitwise.
std::vector<FeedbackStepTrace> train_feedback_vc(
    vcnet::RecurrentConversionNet& net,
    const std::vector<vcnet::TrainPair>& dataset, const FeedbackEnv& env,
    vcnet::OptimizerState& opt, const FeedbackConfig& cfg, int epochs,
    std::uint64_t seed);

// Trace table: "step loss_vc loss_sv combined raw_score grad_norm" rows.
void write_trace_log(const std::string& path,
                     const std::vector<FeedbackStepTrace>& traces);

}  // namespace vcfc::feedback
