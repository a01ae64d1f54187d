// tests/dsp_test.cc

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

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "helpers.hpp"
#include "vcfc/dsp/griffin_lim.hpp"
#include "vcfc/dsp/mel.hpp"
#include "vcfc/dsp/resample.hpp"
#include "vcfc/dsp/stft.hpp"
#include "vcfc/dsp/vad.hpp"
#include "vcfc/dsp/wav.hpp"
#include "vcfc/ref/reference.hpp"

using namespace vcfc;
using test::make_sine;
using test::random_waveform;

namespace {
const dsp::StftConfig kStft1024{1024, 256, dsp::Window::hann};
}

TEST_CASE("fft matches the naive DFT") {
  Rng rng(11);
  for (int n : {8, 64, 1024, 12 /* non power of two */}) {
    std::vector<double> frame(static_cast<std::size_t>(n));
    for (double& v : frame) v = rng.uniform(-1.0, 1.0);
    std::vector<std::complex<double>> buf(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) buf[i] = {frame[i], 0.0};
    dsp::Fft fft(n);
    fft.forward(buf);
    const auto want = ref::naive_dft(frame);
    for (std::size_t k = 0; k < want.size(); ++k) {
      CHECK(std::abs(buf[k] - want[k]) < 1e-9 * std::max(1.0, std::abs(want[k])));
    }
    fft.inverse(buf);
    for (std::size_t i = 0; i < frame.size(); ++i) {
      CHECK(buf[i].real() == doctest::Approx(frame[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("stft of the zero signal is all zero") {
  Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(4096, 0.0);
  const dsp::Spectrogram spec = dsp::stft(w, kStft1024);
  CHECK(spec.frames.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stft rejects too-short input") {
  Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(512, 0.1);
  CHECK_THROWS_WITH_AS(dsp::stft(w, kStft1024), "input too short", Error);
}

TEST_CASE("stft of a 440 Hz tone peaks at bin 28 in every interior frame") {
  const Waveform w = make_sine(440.0, 1.0, 16000);
  const dsp::Spectrogram spec = dsp::stft(w, kStft1024);
  const Matrix mag = spec.frames.cwiseAbs();
  REQUIRE(spec.num_frames() > 4);
  for (Eigen::Index t = 1; t + 1 < spec.num_frames(); ++t) {
    Eigen::Index argmax = 0;
    mag.row(t).maxCoeff(&argmax);
    CHECK(argmax == 28);  // round(440 * 1024 / 16000)
  }
}

TEST_CASE("stft matches the serial reference") {
  Rng rng(5);
  const Waveform w = random_waveform(rng, 3000, 16000);
  const dsp::Spectrogram spec = dsp::stft(w, kStft1024);
  const ComplexMatrix want = ref::naive_stft(
      w.samples, 1024, 256, dsp::make_window(dsp::Window::hann, 1024));
  REQUIRE(spec.frames.rows() == want.rows());
  CHECK((spec.frames - want).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("stft is linear in its input") {
  Rng rng(6);
  const Waveform w = random_waveform(rng, 4096, 16000);
  Waveform scaled = w;
  for (double& s : scaled.samples) s *= 3.25;
  const dsp::Spectrogram a = dsp::stft(w, kStft1024);
  const dsp::Spectrogram b = dsp::stft(scaled, kStft1024);
  CHECK((b.frames - 3.25 * a.frames).cwiseAbs().maxCoeff() < 1e-12 * 3.25 *
            (a.frames.cwiseAbs().maxCoeff() + 1.0));
}

TEST_CASE("istft(stft(w)) reconstructs the COLA interior") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Waveform w = random_waveform(rng, 4096, 16000);
    const Waveform back = dsp::istft(dsp::stft(w, kStft1024), w.sample_rate);
    double acc = 0.0;
    long count = 0;
    for (std::size_t i = 1024; i + 1024 < w.samples.size(); ++i) {
      const double d = back.samples[i] - w.samples[i];
      acc += d * d;
      ++count;
    }
    CHECK(std::sqrt(acc / count) < 1e-6);
  }
}

TEST_CASE("mel scale anchors") {
  CHECK(dsp::hz_to_mel(0.0) == 0.0);
  CHECK(std::abs(dsp::hz_to_mel(1000.0) - 1000.0) < 0.5);
  // strictly increasing
  double prev = -1.0;
  for (double f = 0.0; f <= 8000.0; f += 50.0) {
    const double m = dsp::hz_to_mel(f);
    CHECK(m > prev);
    prev = m;
  }
}

TEST_CASE("mel filterbank rows are nonnegative and nonempty") {
  const Matrix fb = dsp::mel_filterbank(1024, 80, 16000, 0.0, 8000.0);
  CHECK(fb.rows() == 80);
  CHECK(fb.cols() == 513);
  CHECK((fb.array() >= 0.0).all());
  const Vector ones = Vector::Ones(fb.cols());
  for (Eigen::Index m = 0; m < fb.rows(); ++m) {
    CHECK(fb.row(m).dot(ones) > 0.0);
  }
}

TEST_CASE("mel filterbank reports degenerate bands by index") {
  // Far too many bands for an 8-point FFT: some filter has no bin support.
  CHECK_THROWS_AS(dsp::mel_filterbank(8, 40, 16000, 0.0, 8000.0), Error);
}

TEST_CASE("mel filterbank application matches the serial reference") {
  Rng rng(8);
  const Matrix power = test::random_matrix(rng, 6, 513, 0.0, 2.0);
  const Matrix fb = dsp::mel_filterbank(1024, 80, 16000, 0.0, 8000.0);
  const Matrix fast = power * fb.transpose();
  const Matrix slow = ref::naive_mel_apply(power, fb);
  CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("log_mel of silence is the log floor everywhere") {
  Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(4096, 0.0);
  dsp::MelConfig cfg;
  const FeatureSequence mel = dsp::log_mel(w, cfg);
  CHECK(mel.dim() == 80);
  CHECK((mel.frames.array() - std::log(1e-10)).abs().maxCoeff() < 1e-12);
}

TEST_CASE("log_mel of a 440 Hz tone peaks in the band containing 440 Hz") {
  const Waveform w = make_sine(440.0, 1.0, 16000);
  dsp::MelConfig cfg;
  const FeatureSequence mel = dsp::log_mel(w, cfg);

  // Band edges on the mel axis.
  const double lo_mel = dsp::hz_to_mel(0.0), hi_mel = dsp::hz_to_mel(8000.0);
  auto band_edge = [&](int idx) {
    return dsp::mel_to_hz(lo_mel + (hi_mel - lo_mel) * idx / (80 + 1));
  };
  for (Eigen::Index t = 1; t + 1 < mel.num_frames(); ++t) {
    Eigen::Index band = 0;
    mel.frames.row(t).maxCoeff(&band);
    const double lo = band_edge(static_cast<int>(band));
    const double hi = band_edge(static_cast<int>(band) + 2);
    CHECK(lo <= 440.0);
    CHECK(440.0 <= hi);
  }
}

TEST_CASE("mfcc of silence is a constant frame") {
  Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(4096, 0.0);
  dsp::MfccConfig cfg;
  cfg.mel.n_mels = 40;
  const FeatureSequence c = dsp::mfcc(w, cfg);
  CHECK(c.dim() == 13);
  const double c0_expected = std::sqrt(40.0) * std::log(1e-10);
  for (Eigen::Index t = 0; t < c.num_frames(); ++t) {
    CHECK(c.frames(t, 0) == doctest::Approx(c0_expected).epsilon(1e-9));
    for (Eigen::Index k = 1; k < c.dim(); ++k) {
      CHECK(std::abs(c.frames(t, k)) < 1e-9);
    }
  }
}

TEST_CASE("mfcc is deterministic and matches the direct-summation DCT") {
  Rng rng(9);
  const Waveform w = random_waveform(rng, 5000, 16000);
  dsp::MfccConfig cfg;
  cfg.mel.n_mels = 40;
  const FeatureSequence a = dsp::mfcc(w, cfg);
  const FeatureSequence b = dsp::mfcc(w, cfg);
  CHECK(test::exact_equal(a.frames, b.frames));

  const FeatureSequence logmel = dsp::log_mel(w, cfg.mel);
  const Matrix want = ref::naive_dct2(logmel.frames, 13, true);
  CHECK((a.frames - want).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("mfcc rejects n_ceps beyond the mel band count") {
  Waveform w = make_sine(440.0, 0.3, 16000);
  dsp::MfccConfig cfg;
  cfg.mel.n_mels = 10;
  cfg.n_ceps = 11;
  CHECK_THROWS_AS(dsp::mfcc(w, cfg), Error);
}

TEST_CASE("delta features: constant input has zero dynamics") {
  FeatureSequence f;
  f.kind = FeatureKind::mel;
  f.frames = Matrix::Constant(12, 80, 3.5);
  const FeatureSequence d = dsp::delta_features(f, 2);
  CHECK(d.dim() == 240);
  CHECK(test::exact_equal(d.frames.leftCols(80), f.frames));
  CHECK(d.frames.rightCols(160).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("delta features: linear ramp has constant delta, zero accel inside") {
  const Eigen::Index n = 20;
  FeatureSequence f;
  f.kind = FeatureKind::mel;
  f.frames.resize(n, 3);
  for (Eigen::Index t = 0; t < n; ++t) {
    for (Eigen::Index d = 0; d < 3; ++d) {
      f.frames(t, d) = 0.25 * static_cast<double>(t) * (d + 1.0);
    }
  }
  const FeatureSequence out = dsp::delta_features(f, 2);
  for (Eigen::Index t = 2; t < n - 2; ++t) {
    for (Eigen::Index d = 0; d < 3; ++d) {
      CHECK(out.frames(t, 3 + d) == doctest::Approx(0.25 * (d + 1.0)).epsilon(1e-12));
    }
  }
  for (Eigen::Index t = 4; t < n - 4; ++t) {
    CHECK(out.frames.row(t).tail(3).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("griffin_lim: zero magnitude gives the zero waveform") {
  dsp::MagnitudeSpectrogram mag;
  mag.frame_length = 1024;
  mag.hop = 256;
  mag.frames = Matrix::Zero(9, 513);
  const auto res = dsp::griffin_lim(mag, 16000, {4, std::nullopt});
  for (double s : res.waveform.samples) CHECK(s == 0.0);
}

TEST_CASE("griffin_lim recovers a 440 Hz tone within one bin") {
  const Waveform w = make_sine(440.0, 1.0, 16000, 0.6);
  const dsp::MagnitudeSpectrogram mag = dsp::magnitude(dsp::stft(w, kStft1024));
  dsp::GriffinLimConfig cfg;
  cfg.n_iters = 60;
  const auto res = dsp::griffin_lim(mag, 16000, cfg);
  const double freq = test::dominant_frequency(res.waveform, 2048);
  CHECK(std::abs(freq - 440.0) <= 16000.0 / 1024.0);
}

TEST_CASE("griffin_lim error is non-increasing over iterations") {
  Rng rng(10);
  dsp::MagnitudeSpectrogram mag;
  mag.frame_length = 1024;
  mag.hop = 256;
  mag.frames = test::random_matrix(rng, 8, 513, 0.0, 1.0);
  dsp::GriffinLimConfig cfg;
  cfg.n_iters = 60;
  const auto res = dsp::griffin_lim(mag, 16000, cfg);
  REQUIRE(res.errors.size() == 60);
  for (std::size_t k = 1; k < res.errors.size(); ++k) {
    CHECK(res.errors[k] <= res.errors[k - 1] + 1e-10 * std::max(1.0, res.errors[k - 1]));
  }
}

TEST_CASE("griffin_lim is deterministic, with and without a phase seed") {
  Rng rng(12);
  dsp::MagnitudeSpectrogram mag;
  mag.frame_length = 1024;
  mag.hop = 256;
  mag.frames = test::random_matrix(rng, 6, 513, 0.0, 1.0);
  dsp::GriffinLimConfig cfg;
  cfg.n_iters = 8;
  const auto a = dsp::griffin_lim(mag, 16000, cfg);
  const auto b = dsp::griffin_lim(mag, 16000, cfg);
  CHECK(a.waveform.samples == b.waveform.samples);
  cfg.random_phase_seed = 99;
  const auto c = dsp::griffin_lim(mag, 16000, cfg);
  const auto d = dsp::griffin_lim(mag, 16000, cfg);
  CHECK(c.waveform.samples == d.waveform.samples);
}

TEST_CASE("energy vad keeps everything on degenerate input") {
  Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(4096, 0.0);
  const auto mask = dsp::energy_vad(w, {256, 128, 0.0});
  dsp::StftConfig framing;
  framing.frame_length = 256;
  framing.hop = 128;
  CHECK(static_cast<Eigen::Index>(mask.size()) ==
        dsp::stft_num_frames(w.samples.size(), framing));
  for (bool b : mask) CHECK(b);
}

TEST_CASE("energy vad keeps exactly the loud half") {
  Waveform w;
  w.sample_rate = 16000;
  w.samples.assign(4096, 0.0);
  for (std::size_t i = 2048; i < 4096; ++i) {
    w.samples[i] = 0.5 * std::sin(2.0 * 3.14159265358979323846 * 440.0 *
                                  static_cast<double>(i) / 16000.0);
  }
  // Non-overlapping frames align with the silence/tone boundary.
  const auto mask = dsp::energy_vad(w, {256, 256, 0.0});
  REQUIRE(mask.size() == 16);
  for (std::size_t t = 0; t < 8; ++t) CHECK_FALSE(mask[t]);
  for (std::size_t t = 8; t < 16; ++t) CHECK(mask[t]);
}

TEST_CASE("resample: identity at the same rate") {
  Rng rng(13);
  const Waveform w = random_waveform(rng, 1000, 16000);
  const Waveform out = dsp::resample(w, 16000);
  CHECK(out.samples == w.samples);
}

TEST_CASE("resample: 16 kHz to 8 kHz keeps a 440 Hz tone and the length") {
  const Waveform w = make_sine(440.0, 1.0, 16000, 0.7);
  const Waveform out = dsp::resample(w, 8000);
  CHECK(out.sample_rate == 8000);
  CHECK(std::abs(static_cast<long>(out.samples.size()) - 8000) <= 1);
  const double freq = test::dominant_frequency(out, 2048);
  CHECK(std::abs(freq - 440.0) <= 8000.0 / 2048.0 + 1e-9);
}

TEST_CASE("wav files round-trip within quantization error") {
  namespace fs = std::filesystem;
  Rng rng(14);
  Waveform w = random_waveform(rng, 2000, 8000, 0.8);
  const fs::path path = fs::temp_directory_path() / "vcfc_wav_test.wav";
  dsp::write_wav(path.string(), w);
  const Waveform back = dsp::read_wav(path.string());
  CHECK(back.sample_rate == 8000);
  REQUIRE(back.samples.size() == w.samples.size());
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    CHECK(std::abs(back.samples[i] - w.samples[i]) <= 0.5 / 32767.0 + 1e-12);
  }
  fs::remove(path);
}
