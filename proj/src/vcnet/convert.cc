// src/vcnet/convert.cc

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

#include "vcfc/vcnet/convert.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "vcfc/dsp/resample.hpp"

namespace vcfc::vcnet {

FeatureSynthesizer::FeatureSynthesizer(const SynthesisConfig& cfg) : cfg_(cfg) {
  const Matrix fb =
      dsp::mel_filterbank(cfg.mel.stft.frame_length, cfg.mel.n_mels,
                          cfg.sample_rate, cfg.mel.f_min, cfg.mel.f_max);
  Eigen::JacobiSVD<Matrix> svd(fb, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double tol = 1e-12 * svd.singularValues()(0);
  Vector inv_sv = svd.singularValues();
  for (Eigen::Index i = 0; i < inv_sv.size(); ++i) {
    inv_sv(i) = inv_sv(i) > tol ? 1.0 / inv_sv(i) : 0.0;
  }
  pinv_ = svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

Waveform FeatureSynthesizer::synthesize(const Matrix& acoustic,
                                        int griffin_lim_iters) const {
  check(acoustic.cols() >= cfg_.mel.n_mels,
        "acoustic frames narrower than the mel block");
  check(acoustic.rows() >= 1, "no frames to synthesize");

  const double log_floor = std::log(cfg_.mel.log_floor);
  Matrix log_mel = acoustic.leftCols(cfg_.mel.n_mels)
                       .cwiseMax(log_floor)
                       .cwiseMin(cfg_.log_cap);
  const Matrix mel_power =
      (log_mel.array().exp() - cfg_.mel.log_floor).cwiseMax(0.0).matrix();
  const Matrix linear_power = (mel_power * pinv_.transpose()).cwiseMax(0.0);

  dsp::MagnitudeSpectrogram mag;
  mag.frame_length = cfg_.mel.stft.frame_length;
  mag.hop = cfg_.mel.stft.hop;
  mag.window = cfg_.mel.stft.window;
  mag.frames = linear_power.cwiseSqrt();

  dsp::GriffinLimConfig gl;
  gl.n_iters = griffin_lim_iters;
  return dsp::griffin_lim(mag, cfg_.sample_rate, gl).waveform;
}

Waveform FeatureSynthesizer::synthesize(const Matrix& acoustic) const {
  return synthesize(acoustic, cfg_.griffin_lim_iters);
}

Waveform convert(const RecurrentConversionNet& net, const Waveform& source,
                 const ppg::PosteriorModel& content_model,
                 const dsp::MfccConfig& content_features,
                 const FeatureSynthesizer& synth) {
  validate_waveform(source);
  Waveform at_rate = source.sample_rate == synth.config().sample_rate
                         ? source
                         : dsp::resample(source, synth.config().sample_rate);
  const FeatureSequence feats = dsp::mfcc(at_rate, content_features);
  const FeatureSequence posterior = ppg::extract_ppg(feats, content_model);
  const Matrix acoustic = net_forward(net, posterior.frames);
  return synth.synthesize(acoustic);
}

}  // namespace vcfc::vcnet
