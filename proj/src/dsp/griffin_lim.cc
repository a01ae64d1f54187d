// src/dsp/griffin_lim.cc

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

#include "vcfc/dsp/griffin_lim.hpp"

#include <cmath>
#include <complex>

#include "vcfc/core/rng.hpp"

namespace vcfc::dsp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Distance between two one-sided magnitude sets measured in the full-spectrum
// norm (interior bins weighted twice, DC and Nyquist once). This is the norm
// in which istft() is the least-squares inverse, so the per-iteration error is
// non-increasing in it.
double full_spectrum_distance(const Matrix& a, const Matrix& b) {
  const Eigen::Index bins = a.cols();
  double acc = 0.0;
  for (Eigen::Index t = 0; t < a.rows(); ++t) {
    for (Eigen::Index k = 0; k < bins; ++k) {
      const double d = a(t, k) - b(t, k);
      const double w = (k == 0 || k == bins - 1) ? 1.0 : 2.0;
      acc += w * d * d;
    }
  }
  return std::sqrt(acc);
}

}  // namespace

GriffinLimResult griffin_lim(const MagnitudeSpectrogram& mag, int sample_rate,
                             const GriffinLimConfig& cfg) {
  check(cfg.n_iters >= 1, "griffin_lim needs n_iters >= 1");
  check((mag.frames.array() >= 0.0).all(),
        "griffin_lim magnitude must be nonnegative");

  GriffinLimResult res;
  if (mag.frames.size() == 0 || mag.frames.maxCoeff() == 0.0) {
    // Nothing to reconstruct; emit the zero signal of the right length.
    Spectrogram zero;
    zero.frame_length = mag.frame_length;
    zero.hop = mag.hop;
    zero.window = mag.window;
    zero.frames = ComplexMatrix::Zero(mag.num_frames(), mag.num_bins());
    res.waveform = istft(zero, sample_rate);
    res.errors.assign(static_cast<std::size_t>(cfg.n_iters), 0.0);
    return res;
  }

  Spectrogram est;
  est.frame_length = mag.frame_length;
  est.hop = mag.hop;
  est.window = mag.window;
  est.frames.resize(mag.num_frames(), mag.num_bins());

  if (cfg.random_phase_seed) {
    Rng rng(*cfg.random_phase_seed);
    for (Eigen::Index t = 0; t < mag.num_frames(); ++t) {
      for (Eigen::Index k = 0; k < mag.num_bins(); ++k) {
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        est.frames(t, k) =
            mag.frames(t, k) * std::complex<double>(std::cos(phi), std::sin(phi));
      }
    }
  } else {
    est.frames = mag.frames.cast<std::complex<double>>();
  }

  Waveform x;
  for (int it = 0; it < cfg.n_iters; ++it) {
    x = istft(est, sample_rate);
    const Spectrogram consistent = stft(x, {est.frame_length, est.hop, est.window});
    const Matrix cur_mag = consistent.frames.cwiseAbs();
    res.errors.push_back(full_spectrum_distance(cur_mag, mag.frames));
    // Impose the target magnitude, keep the phase of the consistent estimate.
    for (Eigen::Index t = 0; t < mag.num_frames(); ++t) {
      for (Eigen::Index k = 0; k < mag.num_bins(); ++k) {
        const double m = cur_mag(t, k);
        est.frames(t, k) = m > 0.0
                               ? consistent.frames(t, k) * (mag.frames(t, k) / m)
                               : std::complex<double>(mag.frames(t, k), 0.0);
      }
    }
  }
  res.waveform = istft(est, sample_rate);
  return res;
}

}  // namespace vcfc::dsp
