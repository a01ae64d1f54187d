// include/vcfc/dsp/griffin_lim.hpp

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

#include <optional>
#include <vector>

#include "vcfc/core/types.hpp"
#include "vcfc/dsp/stft.hpp"

namespace vcfc::dsp {

struct GriffinLimConfig {
  int n_iters = 60;
  // Zero phase initialization keeps synthesis deterministic without a seed;
  // set a seed for uniform random phases instead.
  std::optional<std::uint64_t> random_phase_seed;
};

struct GriffinLimResult {
  Waveform waveform;
  // Frobenius distance between |STFT(x_k)| and the target magnitude after
  // each iteration; non-increasing by the projection argument.
  std::vector<double> errors;
};

GriffinLimResult griffin_lim(const MagnitudeSpectrogram& mag, int sample_rate,
                             const GriffinLimConfig& cfg);

}  // namespace vcfc::dsp
