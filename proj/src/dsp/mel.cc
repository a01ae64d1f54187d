// src/dsp/mel.cc

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

#include "vcfc/dsp/mel.hpp"

#include <cmath>
#include <string>

namespace vcfc::dsp {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

Matrix mel_filterbank(int n_fft, int n_mels, int sample_rate, double f_min,
                      double f_max) {
  check(n_mels >= 1, "mel filterbank needs n_mels >= 1");
  check(sample_rate > 0, "mel filterbank needs a positive sample rate");
  if (f_max <= 0.0) f_max = sample_rate / 2.0;
  check(f_min >= 0.0 && f_min < f_max && f_max <= sample_rate / 2.0,
        "mel filterbank needs 0 <= f_min < f_max <= sample_rate/2");

  const Eigen::Index n_bins = n_fft / 2 + 1;
  const double mel_lo = hz_to_mel(f_min);
  const double mel_hi = hz_to_mel(f_max);
  std::vector<double> hz(static_cast<std::size_t>(n_mels) + 2);
  for (int m = 0; m < n_mels + 2; ++m) {
    const double mel = mel_lo + (mel_hi - mel_lo) * m / (n_mels + 1);
    hz[static_cast<std::size_t>(m)] = mel_to_hz(mel);
  }

  Matrix fb = Matrix::Zero(n_mels, n_bins);
  for (int m = 0; m < n_mels; ++m) {
    const double lo = hz[static_cast<std::size_t>(m)];
    const double mid = hz[static_cast<std::size_t>(m) + 1];
    const double hi = hz[static_cast<std::size_t>(m) + 2];
    if (!(lo < mid && mid < hi)) {
      throw Error("mel filter " + std::to_string(m) + " has zero width");
    }
    bool any = false;
    for (Eigen::Index k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / n_fft;
      const double up = (f - lo) / (mid - lo);
      const double down = (hi - f) / (hi - mid);
      const double v = std::max(0.0, std::min(up, down));
      fb(m, k) = v;
      if (v > 0.0) any = true;
    }
    if (!any) {
      throw Error("mel filter " + std::to_string(m) +
                  " has no support on the FFT grid (degenerate band)");
    }
  }
  return fb;
}

FeatureSequence log_mel(const Waveform& w, const MelConfig& cfg) {
  const Spectrogram spec = stft(w, cfg.stft);
  const Matrix power = power_frames(spec);
  const Matrix fb = mel_filterbank(cfg.stft.frame_length, cfg.n_mels,
                                   w.sample_rate, cfg.f_min, cfg.f_max);
  FeatureSequence out;
  out.kind = FeatureKind::mel;
  out.frame_rate = static_cast<double>(w.sample_rate) / cfg.stft.hop;
  out.frames = ((power * fb.transpose()).array() + cfg.log_floor).log().matrix();
  return out;
}

Matrix dct_matrix(int n_ceps, int n_mels, bool include_c0) {
  const int first = include_c0 ? 0 : 1;
  const int last = first + n_ceps - 1;
  check(n_ceps >= 1, "mfcc needs n_ceps >= 1");
  if (last > n_mels - 1) {
    throw Error("mfcc: n_ceps exceeds the number of mel bands");
  }
  Matrix dct(n_ceps, n_mels);
  for (int r = 0; r < n_ceps; ++r) {
    const int k = first + r;
    const double scale =
        k == 0 ? std::sqrt(1.0 / n_mels) : std::sqrt(2.0 / n_mels);
    for (int n = 0; n < n_mels; ++n) {
      dct(r, n) = scale * std::cos(kPi * k * (2.0 * n + 1.0) / (2.0 * n_mels));
    }
  }
  return dct;
}

FeatureSequence mfcc(const Waveform& w, const MfccConfig& cfg) {
  FeatureSequence mel = log_mel(w, cfg.mel);
  const Matrix dct = dct_matrix(cfg.n_ceps, cfg.mel.n_mels, cfg.include_c0);
  FeatureSequence out;
  out.kind = FeatureKind::mfcc;
  out.frame_rate = mel.frame_rate;
  out.frames = mel.frames * dct.transpose();
  return out;
}

FeatureSequence delta_features(const FeatureSequence& f, int window) {
  validate_feature_sequence(f);
  check(window >= 1, "delta window must be >= 1");
  const Eigen::Index n = f.num_frames();
  const Eigen::Index d = f.dim();

  double denom = 0.0;
  for (int k = 1; k <= window; ++k) denom += 2.0 * k * k;

  auto regress = [&](const Matrix& x) {
    Matrix out(n, d);
    for (Eigen::Index t = 0; t < n; ++t) {
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(d);
      for (int k = 1; k <= window; ++k) {
        const Eigen::Index ahead = std::min<Eigen::Index>(t + k, n - 1);
        const Eigen::Index behind = std::max<Eigen::Index>(t - k, 0);
        acc += k * (x.row(ahead) - x.row(behind));
      }
      out.row(t) = acc / denom;
    }
    return out;
  };

  const Matrix delta = regress(f.frames);
  const Matrix delta2 = regress(delta);

  FeatureSequence out;
  out.kind = FeatureKind::mel_deltas;
  out.frame_rate = f.frame_rate;
  out.frames.resize(n, 3 * d);
  out.frames.leftCols(d) = f.frames;
  out.frames.middleCols(d, d) = delta;
  out.frames.rightCols(d) = delta2;
  return out;
}

}  // namespace vcfc::dsp
