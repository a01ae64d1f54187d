// src/dsp/resample.cc

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

#include "vcfc/dsp/resample.hpp"

#include <cmath>

#include "vcfc/core/parallel.hpp"

namespace vcfc::dsp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kHalfWidth = 32;  // kernel half-width in source samples

double windowed_sinc(double t, double cutoff) {
  // cutoff is in cycles per source sample, <= 0.5.
  if (std::abs(t) >= kHalfWidth) return 0.0;
  double s;
  if (t == 0.0) {
    s = 2.0 * cutoff;
  } else {
    s = std::sin(2.0 * kPi * cutoff * t) / (kPi * t);
  }
  const double win = 0.5 * (1.0 + std::cos(kPi * t / kHalfWidth));  // Hann
  return s * win;
}

}  // namespace

Waveform resample(const Waveform& w, int target_rate) {
  validate_waveform(w);
  check(target_rate > 0, "resample target rate must be positive");
  if (target_rate == w.sample_rate) return w;

  const double ratio = static_cast<double>(w.sample_rate) / target_rate;
  const std::size_t in_len = w.samples.size();
  const std::size_t out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(in_len) * target_rate / w.sample_rate));
  // Anti-alias at half the lower of the two rates, with a little roll-off
  // margin for the finite kernel.
  const double cutoff =
      0.5 * std::min(1.0, static_cast<double>(target_rate) / w.sample_rate) * 0.95;

  Waveform out;
  out.sample_rate = target_rate;
  out.samples.resize(out_len);
  par::parallel_for(static_cast<std::ptrdiff_t>(out_len), [&](std::ptrdiff_t n) {
    const double t = static_cast<double>(n) * ratio;
    const long lo = static_cast<long>(std::ceil(t)) - kHalfWidth;
    const long hi = static_cast<long>(std::floor(t)) + kHalfWidth;
    double acc = 0.0;
    for (long k = std::max(0L, lo); k <= std::min(static_cast<long>(in_len) - 1, hi); ++k) {
      acc += w.samples[static_cast<std::size_t>(k)] * windowed_sinc(t - k, cutoff);
    }
    // The 2*cutoff prefactor in the kernel keeps DC gain at 1 for any ratio.
    out.samples[static_cast<std::size_t>(n)] = acc;
  });
  return out;
}

}  // namespace vcfc::dsp
