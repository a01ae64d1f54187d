// src/dsp/stft.cc

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

#include "vcfc/dsp/stft.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "vcfc/core/parallel.hpp"
#include "vcfc/dsp/fft.hpp"

namespace vcfc::dsp {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Window window_from_name(const std::string& name) {
  if (name == "hann") return Window::hann;
  if (name == "hamming") return Window::hamming;
  if (name == "rectangular" || name == "rect") return Window::rectangular;
  throw Error("unknown window: " + name);
}

std::string window_name(Window w) {
  switch (w) {
    case Window::hann: return "hann";
    case Window::hamming: return "hamming";
    case Window::rectangular: return "rectangular";
  }
  return "unknown";
}

Vector make_window(Window kind, int length) {
  check(length >= 1, "window length must be >= 1");
  Vector w(length);
  switch (kind) {
    case Window::hann:
      for (int n = 0; n < length; ++n) {
        w(n) = 0.5 * (1.0 - std::cos(2.0 * kPi * n / length));
      }
      break;
    case Window::hamming:
      for (int n = 0; n < length; ++n) {
        w(n) = 0.54 - 0.46 * std::cos(2.0 * kPi * n / length);
      }
      break;
    case Window::rectangular:
      w.setOnes();
      break;
  }
  return w;
}

Eigen::Index stft_num_frames(std::size_t num_samples, const StftConfig& cfg) {
  if (num_samples < static_cast<std::size_t>(cfg.frame_length)) return 0;
  return static_cast<Eigen::Index>(
      (num_samples - static_cast<std::size_t>(cfg.frame_length)) /
          static_cast<std::size_t>(cfg.hop) +
      1);
}

Spectrogram stft(const Waveform& w, const StftConfig& cfg) {
  validate_waveform(w);
  check(cfg.hop >= 1, "stft hop must be >= 1");
  check(cfg.frame_length >= 2, "stft frame length must be >= 2");
  const Eigen::Index n_frames = stft_num_frames(w.samples.size(), cfg);
  if (n_frames < 1) throw Error("input too short");

  const int L = cfg.frame_length;
  const Eigen::Index n_bins = L / 2 + 1;
  const Vector win = make_window(cfg.window, L);
  const Fft fft(L);

  Spectrogram spec;
  spec.frame_length = L;
  spec.hop = cfg.hop;
  spec.window = cfg.window;
  spec.frames.resize(n_frames, n_bins);

  par::parallel_for(n_frames, [&](std::ptrdiff_t t) {
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(L));
    const std::size_t off = static_cast<std::size_t>(t) * static_cast<std::size_t>(cfg.hop);
    for (int n = 0; n < L; ++n) {
      buf[static_cast<std::size_t>(n)] = {w.samples[off + static_cast<std::size_t>(n)] * win(n), 0.0};
    }
    fft.forward(buf);
    for (Eigen::Index k = 0; k < n_bins; ++k) {
      spec.frames(t, k) = buf[static_cast<std::size_t>(k)];
    }
  });
  return spec;
}

Waveform istft(const Spectrogram& spec, int sample_rate) {
  check(spec.num_frames() >= 1, "istft needs at least one frame");
  const int L = spec.frame_length;
  const int hop = spec.hop;
  check(L >= 2 && hop >= 1, "istft has invalid frame parameters");
  check(spec.num_bins() == L / 2 + 1, "istft bin count does not match frame length");

  const Eigen::Index n_frames = spec.num_frames();
  const Vector win = make_window(spec.window, L);
  const Fft fft(L);

  // Per-frame inverse transforms run in parallel; overlap-add stays serial so
  // no two frames race on the same output sample.
  Matrix frames_td(n_frames, L);
  par::parallel_for(n_frames, [&](std::ptrdiff_t t) {
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(L));
    for (int k = 0; k <= L / 2; ++k) {
      buf[static_cast<std::size_t>(k)] = spec.frames(t, k);
    }
    for (int k = L / 2 + 1; k < L; ++k) {
      buf[static_cast<std::size_t>(k)] = std::conj(spec.frames(t, L - k));
    }
    fft.inverse(buf);
    for (int n = 0; n < L; ++n) {
      frames_td(t, n) = buf[static_cast<std::size_t>(n)].real() * win(n);
    }
  });

  const std::size_t out_len =
      static_cast<std::size_t>(n_frames - 1) * static_cast<std::size_t>(hop) +
      static_cast<std::size_t>(L);
  std::vector<double> acc(out_len, 0.0), den(out_len, 0.0);
  for (Eigen::Index t = 0; t < n_frames; ++t) {
    const std::size_t off = static_cast<std::size_t>(t) * static_cast<std::size_t>(hop);
    for (int n = 0; n < L; ++n) {
      acc[off + static_cast<std::size_t>(n)] += frames_td(t, n);
      den[off + static_cast<std::size_t>(n)] += win(n) * win(n);
    }
  }

  Waveform out;
  out.sample_rate = sample_rate;
  out.samples.resize(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    out.samples[i] = den[i] > 1e-12 ? acc[i] / den[i] : 0.0;
  }
  return out;
}

MagnitudeSpectrogram magnitude(const Spectrogram& spec) {
  MagnitudeSpectrogram mag;
  mag.frame_length = spec.frame_length;
  mag.hop = spec.hop;
  mag.window = spec.window;
  mag.frames = spec.frames.cwiseAbs();
  return mag;
}

Matrix power_frames(const Spectrogram& spec) {
  return spec.frames.cwiseAbs2();
}

}  // namespace vcfc::dsp
