// tests/asv_test.cc

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

#include <filesystem>

#include "helpers.hpp"
#include "vcfc/asv/projection.hpp"
#include "vcfc/dsp/resample.hpp"
#include "vcfc/asv/supervector.hpp"
#include "vcfc/asv/ubm.hpp"
#include "vcfc/asv/verifier.hpp"
#include "vcfc/harness/toy_corpus.hpp"
#include "vcfc/ref/reference.hpp"

using namespace vcfc;

namespace {

Matrix gaussian_frames(Rng& rng, int n, const Vector& mean, double stddev) {
  Matrix out(n, mean.size());
  for (int i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < mean.size(); ++j) {
      out(i, j) = mean(j) + stddev * rng.normal();
    }
  }
  return out;
}

// A small verifier over synthetic voices, shared by several suites.
asv::BlackBoxVerifier tiny_verifier(int n_background = 4, int utts = 5,
                                    int components = 8, int embed_dim = 6) {
  asv::AsvConfig cfg = asv::default_asv_config();
  cfg.ubm_components = components;
  cfg.embed_dim = embed_dim;
  cfg.em_iters = 8;

  std::vector<Matrix> per_utt;
  Eigen::Index total = 0;
  for (int s = 0; s < n_background; ++s) {
    for (int u = 0; u < utts; ++u) {
      const Waveform w = harness::synthesize_toy_utterance(
          Rng::derive(900, static_cast<std::uint64_t>(s)),
          Rng::derive(901, static_cast<std::uint64_t>(s * 100 + u)), s % 2 == 1,
          0.5, 16000);
      const Waveform at8k = dsp::resample(w, cfg.sample_rate);
      const FeatureSequence f = dsp::mfcc(at8k, cfg.mfcc);
      const auto mask = dsp::energy_vad(at8k, cfg.vad);
      Matrix voiced = dsp::select_rows(f.frames, mask);
      if (voiced.rows() == 0) continue;
      total += voiced.rows();
      per_utt.push_back(std::move(voiced));
    }
  }
  Matrix pool(total, per_utt.front().cols());
  Eigen::Index at = 0;
  for (const Matrix& f : per_utt) {
    pool.middleRows(at, f.rows()) = f;
    at += f.rows();
  }
  GmmFitOptions opts;
  opts.n_iters = cfg.em_iters;
  opts.seed = 5;
  const asv::Ubm ubm = asv::train_ubm(pool, components, opts);
  Matrix svs(static_cast<Eigen::Index>(per_utt.size()),
             ubm.gmm.components() * ubm.gmm.dim());
  for (std::size_t i = 0; i < per_utt.size(); ++i) {
    svs.row(static_cast<Eigen::Index>(i)) =
        asv::supervector(ubm, per_utt[i], cfg.map_relevance).transpose();
  }
  return asv::BlackBoxVerifier(cfg, ubm, asv::fit_projection(svs, embed_dim));
}

}  // namespace

TEST_CASE("train_ubm recovers a single Gaussian within 5%") {
  Rng rng(41);
  Vector mean(3);
  mean << 1.0, -2.0, 0.5;
  const Matrix frames = gaussian_frames(rng, 4000, mean, 0.8);
  GmmFitOptions opts;
  opts.n_iters = 5;
  opts.seed = 2;
  const asv::Ubm ubm = asv::train_ubm(frames, 1, opts);
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(std::abs(ubm.gmm.means(0, j) - mean(j)) < 0.05 * std::max(1.0, std::abs(mean(j))));
    CHECK(std::abs(ubm.gmm.variances(0, j) - 0.64) < 0.05);
  }
  CHECK(ubm.gmm.weights.sum() == doctest::Approx(1.0));
}

TEST_CASE("train_ubm enforces the pool-size precondition") {
  Matrix frames = Matrix::Zero(39, 2);
  GmmFitOptions opts;
  CHECK_THROWS_AS(asv::train_ubm(frames, 2, opts), Error);
}

TEST_CASE("supervector is near zero for frames at UBM behavior") {
  asv::Ubm ubm;
  ubm.gmm.weights = Vector::Constant(2, 0.5);
  ubm.gmm.means.resize(2, 3);
  ubm.gmm.means << 0, 0, 0, 10, 10, 10;
  ubm.gmm.variances = Matrix::Constant(2, 3, 1.0);
  ubm.gmm.prepare();

  Matrix frames(40, 3);
  for (int i = 0; i < 40; ++i) {
    frames.row(i) = ubm.gmm.means.row(i % 2);
  }
  const Vector sv = asv::supervector(ubm, frames, 4.0);
  CHECK(sv.size() == 6);
  CHECK(sv.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("MAP adaptation approaches the sample mean as relevance vanishes") {
  Rng rng(42);
  asv::Ubm ubm;
  ubm.gmm.weights = Vector::Ones(1);
  ubm.gmm.means = Matrix::Zero(1, 4);
  ubm.gmm.variances = Matrix::Ones(1, 4);
  ubm.gmm.prepare();
  const Matrix frames = test::random_matrix(rng, 50, 4, -1.0, 3.0);
  const Matrix adapted = asv::map_adapt_means(ubm, frames, 1e-12);
  CHECK((adapted.row(0) - frames.colwise().mean()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("supervector fails loudly on empty input") {
  asv::Ubm ubm;
  ubm.gmm.weights = Vector::Ones(1);
  ubm.gmm.means = Matrix::Zero(1, 2);
  ubm.gmm.variances = Matrix::Ones(1, 2);
  ubm.gmm.prepare();
  CHECK_THROWS_WITH_AS(asv::supervector(ubm, Matrix(0, 2), 4.0),
                       doctest::Contains("no voiced frames"), Error);
}

TEST_CASE("fit_projection reconstructs an exact 2-plane and stays orthonormal") {
  Rng rng(43);
  Vector u = Vector::Zero(6), v = Vector::Zero(6);
  u(0) = 1.0;
  u(3) = 2.0;
  v(1) = -1.0;
  v(4) = 0.5;
  Matrix data(30, 6);
  for (int i = 0; i < 30; ++i) {
    data.row(i) = (rng.uniform(-2.0, 2.0) * u + rng.uniform(-2.0, 2.0) * v).transpose();
    data.row(i).array() += 0.25;  // off-center
  }
  const asv::Projection proj = asv::fit_projection(data, 2);
  CHECK((proj.basis * proj.basis.transpose() - Matrix::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-8);
  for (int i = 0; i < 30; ++i) {
    const Vector x = data.row(i).transpose();
    const Vector recon =
        proj.basis.transpose() * proj.apply(x) + proj.center;
    CHECK((recon - x).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK_THROWS_AS(asv::fit_projection(data, 3), Error);  // rank is 2
}

TEST_CASE("fit_projection's top direction matches power iteration") {
  Rng rng(44);
  Matrix data(200, 5);
  for (int i = 0; i < 200; ++i) {
    const double main_axis = 3.0 * rng.normal();
    for (int j = 0; j < 5; ++j) {
      data(i, j) = 0.3 * rng.normal() + main_axis * (j == 2 ? 1.0 : 0.1);
    }
  }
  const asv::Projection proj = asv::fit_projection(data, 2);
  const Matrix centered = data.rowwise() - data.colwise().mean();
  const Matrix cov = centered.transpose() * centered / data.rows();
  const Vector top = ref::power_iteration_top_direction(cov, 500);
  const double cosine = std::abs(proj.basis.row(0).dot(top.transpose()));
  CHECK(cosine >= 0.999);
}

TEST_CASE("embeddings are deterministic, unit length and gain invariant") {
  asv::BlackBoxVerifier v = tiny_verifier();
  const Waveform w = harness::synthesize_toy_utterance(
      Rng::derive(77, 1), Rng::derive(77, 2), false, 0.5, 16000);

  const Vector e1 = v.embed(w);
  const Vector e2 = v.embed(w);
  CHECK(test::exact_equal(e1, e2));
  CHECK(std::abs(e1.norm() - 1.0) < 1e-9);

  // With VAD off and c0 excluded, gain cancels out of the cosine score.
  asv::BlackBoxVerifier no_vad(
      [&] {
        asv::AsvConfig cfg = v.config();
        cfg.use_vad = false;
        return cfg;
      }(),
      v.ubm(), v.projection());
  Waveform scaled = w;
  for (double& s : scaled.samples) s *= 0.5;
  const Vector a = no_vad.embed(w);
  const Vector b = no_vad.embed(scaled);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("enrollment basics and the self-similarity bound") {
  asv::BlackBoxVerifier v = tiny_verifier();
  const Waveform w = harness::synthesize_toy_utterance(
      Rng::derive(78, 1), Rng::derive(78, 2), true, 0.5, 16000);
  v.enroll("spk", {w});
  CHECK(v.is_enrolled("spk"));
  CHECK((v.enrollments().at("spk") - v.embed(w)).cwiseAbs().maxCoeff() < 1e-12);

  // Scoring the enrollment utterance of a single-utterance model gives 1.
  CHECK(v.blackbox_score(w, "spk") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(v.blackbox_score(w, "nobody"), Error);

  // Re-enrolling replaces the model.
  const Waveform w2 = harness::synthesize_toy_utterance(
      Rng::derive(79, 1), Rng::derive(79, 2), true, 0.5, 16000);
  const Vector before = v.enrollments().at("spk");
  v.enroll("spk", {w2});
  CHECK((v.enrollments().at("spk") - before).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("scores stay in the cosine range") {
  asv::BlackBoxVerifier v = tiny_verifier();
  Rng rng(45);
  const Waveform enrollment = harness::synthesize_toy_utterance(
      Rng::derive(80, 1), Rng::derive(80, 2), false, 0.5, 16000);
  v.enroll("t", {enrollment});
  for (int i = 0; i < 5; ++i) {
    const Waveform w = harness::synthesize_toy_utterance(
        Rng::derive(81, static_cast<std::uint64_t>(i)),
        Rng::derive(82, static_cast<std::uint64_t>(i)), i % 2 == 0, 0.4, 16000);
    const double s = v.blackbox_score(w, "t");
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("an aggressive VAD threshold raises OracleFailure") {
  asv::BlackBoxVerifier base = tiny_verifier();
  asv::AsvConfig cfg = base.config();
  cfg.vad.offset = 100.0;  // nothing can clear the mean by this much
  asv::BlackBoxVerifier v(cfg, base.ubm(), base.projection());
  const Waveform w = harness::synthesize_toy_utterance(
      Rng::derive(83, 1), Rng::derive(83, 2), false, 0.5, 16000);
  CHECK_THROWS_AS(v.embed(w), OracleFailure);
}

TEST_CASE("verifier checkpoints round-trip") {
  namespace fs = std::filesystem;
  asv::BlackBoxVerifier v = tiny_verifier();
  const Waveform w = harness::synthesize_toy_utterance(
      Rng::derive(84, 1), Rng::derive(84, 2), false, 0.5, 16000);
  v.enroll("alpha", {w});

  const fs::path path = fs::temp_directory_path() / "vcfc_verifier_test.ckpt";
  asv::save_verifier(path.string(), v);
  const asv::BlackBoxVerifier back = asv::load_verifier(path.string());
  CHECK(back.is_enrolled("alpha"));
  CHECK(back.config().ubm_components == v.config().ubm_components);
  CHECK(test::exact_equal(back.ubm().gmm.means, v.ubm().gmm.means));
  CHECK(test::exact_equal(back.projection().basis, v.projection().basis));
  CHECK(back.blackbox_score(w, "alpha") == v.blackbox_score(w, "alpha"));
  fs::remove(path);
}

TEST_CASE("score oracle only exposes the bound speaker's score") {
  asv::BlackBoxVerifier v = tiny_verifier();
  const Waveform w = harness::synthesize_toy_utterance(
      Rng::derive(85, 1), Rng::derive(85, 2), true, 0.5, 16000);
  v.enroll("target", {w});
  const auto oracle = asv::make_score_oracle(v, "target");
  CHECK(oracle->score(w) == v.blackbox_score(w, "target"));
  CHECK_THROWS_AS(asv::make_score_oracle(v, "missing"), Error);
}
