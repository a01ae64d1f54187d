// include/vcfc/vcnet/convert.hpp

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

#include "vcfc/core/types.hpp"
#include "vcfc/dsp/griffin_lim.hpp"
#include "vcfc/dsp/mel.hpp"
#include "vcfc/ppg/posterior_model.hpp"
#include "vcfc/vcnet/net.hpp"

namespace vcfc::vcnet {

struct SynthesisConfig {
  dsp::MelConfig mel;        // geometry of the mel block the net predicts
  int sample_rate = 16000;
  int griffin_lim_iters = 60;
  // Predicted log-mel values are clamped to [log(floor), log_cap] before
  // exponentiation so synthesis stays finite for wild nets.
  double log_cap = 10.0;
};

// Turns predicted acoustic frames (static mels in the leading columns) back
// into a waveform: pseudo-inverse of the mel filterbank to linear power,
// clamped at zero, then Griffin-Lim. The pseudo-inverse is precomputed once.
class FeatureSynthesizer {
 public:
  explicit FeatureSynthesizer(const SynthesisConfig& cfg);

  // acoustic: N x D with D >= n_mels; only the static block is used.
  Waveform synthesize(const Matrix& acoustic, int griffin_lim_iters) const;
  Waveform synthesize(const Matrix& acoustic) const;

  const SynthesisConfig& config() const { return cfg_; }

 private:
  SynthesisConfig cfg_;
  Matrix pinv_;  // (n_fft/2+1) x n_mels
};

// Full conversion: source waveform -> content posteriors -> conversion net ->
// static mels -> waveform at the configured rate.
Waveform convert(const RecurrentConversionNet& net, const Waveform& source,
                 const ppg::PosteriorModel& content_model,
                 const dsp::MfccConfig& content_features,
                 const FeatureSynthesizer& synth);

}  // namespace vcfc::vcnet
