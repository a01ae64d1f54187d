// src/dsp/vad.cc

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

#include "vcfc/dsp/vad.hpp"

#include <cmath>

#include "vcfc/core/parallel.hpp"

namespace vcfc::dsp {

std::vector<bool> energy_vad(const Waveform& w, const VadConfig& cfg) {
  validate_waveform(w);
  check(cfg.frame_length >= 1 && cfg.hop >= 1, "vad has invalid frame parameters");
  StftConfig framing;
  framing.frame_length = cfg.frame_length;
  framing.hop = cfg.hop;
  const Eigen::Index n = stft_num_frames(w.samples.size(), framing);
  if (n < 1) throw Error("input too short");

  Vector log_energy(n);
  par::parallel_for(n, [&](std::ptrdiff_t t) {
    const std::size_t off =
        static_cast<std::size_t>(t) * static_cast<std::size_t>(cfg.hop);
    double e = 0.0;
    for (int i = 0; i < cfg.frame_length; ++i) {
      const double s = w.samples[off + static_cast<std::size_t>(i)];
      e += s * s;
    }
    log_energy(t) = std::log(e + 1e-10);
  });

  std::vector<bool> mask(static_cast<std::size_t>(n), true);
  const double spread = log_energy.maxCoeff() - log_energy.minCoeff();
  if (spread < 1e-12) return mask;  // all-equal energies: keep everything

  const double threshold = log_energy.mean() + cfg.offset;
  for (Eigen::Index t = 0; t < n; ++t) {
    mask[static_cast<std::size_t>(t)] = log_energy(t) > threshold;
  }
  return mask;
}

Matrix select_rows(const Matrix& frames, const std::vector<bool>& mask) {
  check(static_cast<std::size_t>(frames.rows()) == mask.size(),
        "vad mask length does not match frame count");
  Eigen::Index kept = 0;
  for (bool b : mask) kept += b ? 1 : 0;
  Matrix out(kept, frames.cols());
  Eigen::Index r = 0;
  for (Eigen::Index t = 0; t < frames.rows(); ++t) {
    if (mask[static_cast<std::size_t>(t)]) out.row(r++) = frames.row(t);
  }
  return out;
}

}  // namespace vcfc::dsp
