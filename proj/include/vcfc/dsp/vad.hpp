// include/vcfc/dsp/vad.hpp

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

#include <vector>

#include "vcfc/core/types.hpp"
#include "vcfc/dsp/stft.hpp"

namespace vcfc::dsp {

struct VadConfig {
  int frame_length = 256;
  int hop = 128;
  // A frame is kept iff its log energy exceeds the utterance mean by more
  // than this offset.
  double offset = 0.0;
};

// One flag per analysis frame (same framing as stft with the given
// frame_length/hop). When all frames carry the same energy the rule is
// degenerate and every frame is kept.
std::vector<bool> energy_vad(const Waveform& w, const VadConfig& cfg);

// Convenience: drop masked-out rows. Rows and mask must agree in length.
Matrix select_rows(const Matrix& frames, const std::vector<bool>& mask);

}  // namespace vcfc::dsp
