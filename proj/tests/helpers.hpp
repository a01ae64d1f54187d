// tests/helpers.hpp

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

#include <cmath>
#include <vector>

#include "vcfc/core/rng.hpp"
#include "vcfc/core/types.hpp"
#include "vcfc/dsp/fft.hpp"
#include "vcfc/vcnet/net.hpp"

namespace vcfc::test {

inline Waveform make_sine(double freq, double seconds, int sample_rate,
                          double amplitude = 1.0) {
  Waveform w;
  w.sample_rate = sample_rate;
  const int n = static_cast<int>(seconds * sample_rate);
  w.samples.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    w.samples[static_cast<std::size_t>(i)] =
        amplitude * std::sin(2.0 * 3.14159265358979323846 * freq * i / sample_rate);
  }
  return w;
}

inline Waveform random_waveform(Rng& rng, int n, int sample_rate,
                                double amplitude = 0.5) {
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(static_cast<std::size_t>(n));
  for (double& s : w.samples) s = amplitude * (2.0 * rng.uniform() - 1.0);
  return w;
}

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                            double lo = -1.0, double hi = 1.0) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(lo, hi);
  return m;
}

inline bool exact_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.size() == 0) return true;
  return (a - b).cwiseAbs().maxCoeff() == 0.0;
}

inline bool exact_equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  if (a.size() == 0) return true;
  return (a - b).cwiseAbs().maxCoeff() == 0.0;
}

inline bool nets_identical(const vcnet::RecurrentConversionNet& a,
                           const vcnet::RecurrentConversionNet& b) {
  if (a.layers.size() != b.layers.size()) return false;
  bool same = true;
  std::vector<std::pair<const double*, Eigen::Index>> va, vb;
  vcnet::for_each_tensor(a, [&](const std::string&, const auto& t) {
    va.emplace_back(t.data(), t.size());
  });
  vcnet::for_each_tensor(b, [&](const std::string&, const auto& t) {
    vb.emplace_back(t.data(), t.size());
  });
  if (va.size() != vb.size()) return false;
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (va[i].second != vb[i].second) return false;
    for (Eigen::Index j = 0; j < va[i].second; ++j) {
      if (va[i].first[j] != vb[i].first[j]) same = false;
    }
  }
  return same;
}

// Peak frequency of the middle of the signal via one large FFT bin argmax.
inline double dominant_frequency(const Waveform& w, int n_fft = 2048) {
  const int n = static_cast<int>(w.samples.size());
  const int start = std::max(0, (n - n_fft) / 2);
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(n_fft));
  for (int i = 0; i < n_fft; ++i) {
    const int idx = std::min(n - 1, start + i);
    // Hann-windowed slice keeps leakage down.
    const double win =
        0.5 * (1.0 - std::cos(2.0 * 3.14159265358979323846 * i / n_fft));
    buf[static_cast<std::size_t>(i)] = {w.samples[static_cast<std::size_t>(idx)] * win, 0.0};
  }
  dsp::Fft fft(n_fft);
  fft.forward(buf);
  int best = 1;
  double best_mag = 0.0;
  for (int k = 1; k <= n_fft / 2; ++k) {
    const double m = std::abs(buf[static_cast<std::size_t>(k)]);
    if (m > best_mag) {
      best_mag = m;
      best = k;
    }
  }
  return static_cast<double>(best) * w.sample_rate / n_fft;
}

}  // namespace vcfc::test
