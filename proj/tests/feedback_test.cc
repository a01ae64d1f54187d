// tests/feedback_test.cc

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

#include "helpers.hpp"
#include "vcfc/feedback/feedback.hpp"

using namespace vcfc;
using feedback::FeedbackConfig;

TEST_CASE("score normalization maps the cosine range onto [0, 1]") {
  FeedbackConfig cfg;
  CHECK(feedback::normalize_score(1.0, cfg) == 1.0);
  CHECK(feedback::normalize_score(-1.0, cfg) == 0.0);
  CHECK(feedback::normalize_score(0.0, cfg) == 0.5);
  CHECK(feedback::normalize_score(5.0, cfg) == 1.0);   // clamped
  CHECK(feedback::normalize_score(-5.0, cfg) == 0.0);  // clamped

  cfg.score_ceiling = cfg.score_floor;
  CHECK_THROWS_AS(feedback::normalize_score(0.0, cfg), Error);
}

TEST_CASE("the negative-scale transform flips normalized scores") {
  FeedbackConfig cfg;
  CHECK(feedback::loss_sv(1.0, cfg) == 0.0);
  CHECK(feedback::loss_sv(0.0, cfg) == 1.0);
  CHECK(feedback::loss_sv(0.5, cfg) == 0.5);
  cfg.transform = feedback::SvTransform::neg_log;
  CHECK(feedback::loss_sv(1.0, cfg) == 0.0);
  CHECK(feedback::loss_sv(0.5, cfg) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("combined loss is the exact weighted sum") {
  CHECK(feedback::combined_loss(0.5, 0.2, 0.7) == 0.29);
  CHECK(feedback::combined_loss(0.123, 0.9, 0.0) == 0.123);
  CHECK(feedback::combined_loss(0.123, 0.9, 1.0) == 0.9);
  CHECK_THROWS_AS(feedback::combined_loss(0.1, 0.1, 1.5), Error);

  // Monotone in each argument.
  CHECK(feedback::combined_loss(0.6, 0.2, 0.7) > feedback::combined_loss(0.5, 0.2, 0.7));
  CHECK(feedback::combined_loss(0.5, 0.3, 0.7) > feedback::combined_loss(0.5, 0.2, 0.7));
}

TEST_CASE("SPSA returns exactly zero on a constant objective") {
  Rng rng(51);
  std::vector<Matrix> y = {Matrix::Zero(3, 4)};
  const auto est = feedback::estimate_sv_gradient(
      [](const std::vector<Matrix>&) { return 0.375; }, y, 8, 0.05, rng);
  CHECK(est.pairs_used == 8);
  CHECK_FALSE(est.degraded);
  CHECK(est.grads[0].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("SPSA estimates the gradient of a quadratic") {
  Rng rng(52);
  Matrix target(2, 3);
  target << 0.3, -0.7, 1.1, -0.4, 0.9, -1.3;
  Matrix y(2, 3);
  y << 1.0, 0.5, -0.2, 0.8, -0.6, 0.4;
  const std::vector<Matrix> ys = {y};

  const auto loss = [&](const std::vector<Matrix>& v) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v[0].size(); ++i) {
      const double d = v[0].data()[i] - target.data()[i];
      acc += d * d;
    }
    return acc;
  };
  const auto est = feedback::estimate_sv_gradient(loss, ys, 10000, 1e-3, rng);
  const Matrix want = 2.0 * (y - target);
  for (Eigen::Index i = 0; i < want.size(); ++i) {
    const double rel = std::abs(est.grads[0].data()[i] - want.data()[i]) /
                       std::abs(want.data()[i]);
    CHECK(rel < 0.05);
  }
}

TEST_CASE("SPSA is deterministic for a fixed seed") {
  Matrix y = Matrix::Constant(2, 2, 0.5);
  const std::vector<Matrix> ys = {y};
  const auto loss = [](const std::vector<Matrix>& v) {
    return v[0].squaredNorm();
  };
  Rng a(7), b(7);
  const auto ea = feedback::estimate_sv_gradient(loss, ys, 16, 0.05, a);
  const auto eb = feedback::estimate_sv_gradient(loss, ys, 16, 0.05, b);
  CHECK(test::exact_equal(ea.grads[0], eb.grads[0]));
}

TEST_CASE("SPSA drops failing pairs and degrades to zero when all fail") {
  Matrix y = Matrix::Constant(2, 2, 0.5);
  const std::vector<Matrix> ys = {y};
  Rng rng(53);
  int calls = 0;
  const auto flaky = [&](const std::vector<Matrix>& v) {
    ++calls;
    if (calls % 3 == 0) throw OracleFailure("probe rejected");
    return v[0].squaredNorm();
  };
  const auto est = feedback::estimate_sv_gradient(flaky, ys, 6, 0.05, rng);
  CHECK(est.pairs_used < 6);
  CHECK(est.pairs_used > 0);

  Rng rng2(54);
  const auto dead = [](const std::vector<Matrix>&) -> double {
    throw OracleFailure("always");
  };
  const auto zero = feedback::estimate_sv_gradient(dead, ys, 4, 0.05, rng2);
  CHECK(zero.degraded);
  CHECK(zero.pairs_used == 0);
  CHECK(zero.grads[0].cwiseAbs().maxCoeff() == 0.0);
}

namespace {

std::vector<vcnet::TrainPair> tiny_dataset(Rng& rng, int n, int frames,
                                           int d_in, int d_out) {
  std::vector<vcnet::TrainPair> out;
  for (int u = 0; u < n; ++u) {
    vcnet::TrainPair p;
    p.utt_id = "u" + std::to_string(u);
    p.x = test::random_matrix(rng, frames, d_in, 0.0, 1.0);
    p.y = test::random_matrix(rng, frames, d_out, -1.0, 1.0);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

TEST_CASE("alpha = 0 reproduces plain conversion training bitwise") {
  Rng rng(55);
  const auto dataset = tiny_dataset(rng, 7, 10, 5, 8);

  auto net_plain = vcnet::make_net(5, 6, 8, 2, 777);
  auto net_fb = net_plain;
  vcnet::OptimizerState opt_plain, opt_fb;

  const auto plain_reports = vcnet::train_vc(net_plain, dataset, opt_plain, 4, 99);

  FeedbackConfig cfg;
  cfg.alpha = 0.0;
  feedback::FeedbackEnv env;  // no oracle needed on the alpha = 0 path
  const auto traces =
      feedback::train_feedback_vc(net_fb, dataset, env, opt_fb, cfg, 4, 99);

  CHECK(plain_reports.size() == traces.size());
  CHECK(test::nets_identical(net_plain, net_fb));
  for (std::size_t i = 0; i < traces.size(); ++i) {
    CHECK(traces[i].loss_vc == plain_reports[i].loss_vc);
    CHECK(traces[i].combined_loss == plain_reports[i].loss_vc);
    CHECK_FALSE(traces[i].loss_sv.has_value());
  }
}

TEST_CASE("zero feedback epochs leave the net untouched") {
  Rng rng(56);
  const auto dataset = tiny_dataset(rng, 3, 8, 4, 6);
  auto net = vcnet::make_net(4, 5, 6, 1, 123);
  const auto before = net;
  vcnet::OptimizerState opt;
  feedback::FeedbackEnv env;
  FeedbackConfig cfg;
  cfg.alpha = 0.0;
  const auto traces = feedback::train_feedback_vc(net, dataset, env, opt, cfg, 0, 5);
  CHECK(traces.empty());
  CHECK(test::nets_identical(net, before));
}

TEST_CASE("feedback steps keep exact Eq.-style bookkeeping in the trace") {
  // Synthetic environment: a synthesizer-free oracle is not possible through
  // the public step (it synthesizes), so drive a tiny real pipeline.
  Rng rng(57);
  const int n_mels = 8;
  const auto dataset = tiny_dataset(rng, 5, 9, 4, 3 * n_mels);

  vcnet::SynthesisConfig scfg;
  scfg.mel.stft.frame_length = 64;
  scfg.mel.stft.hop = 16;
  scfg.mel.n_mels = n_mels;
  scfg.sample_rate = 8000;
  scfg.griffin_lim_iters = 2;
  const vcnet::FeatureSynthesizer synth(scfg);

  // A cheap deterministic "verifier": mean absolute amplitude squashed into
  // the cosine range. Smooth enough for SPSA to chew on.
  struct AmplitudeOracle final : ScoreOracle {
    double score(const Waveform& w) const override {
      double acc = 0.0;
      for (double s : w.samples) acc += std::abs(s);
      return std::tanh(acc / (1.0 + static_cast<double>(w.samples.size())));
    }
  };
  AmplitudeOracle oracle;
  feedback::FeedbackEnv env;
  env.synthesizer = &synth;
  env.oracle = &oracle;

  auto net = vcnet::make_net(4, 5, 3 * n_mels, 1, 2025);
  vcnet::OptimizerState opt;
  FeedbackConfig cfg;
  cfg.alpha = 0.7;
  cfg.probes = 2;
  cfg.synth_iters = 2;

  const auto traces = feedback::train_feedback_vc(net, dataset, env, opt, cfg, 1, 31);
  REQUIRE(traces.size() == 1);  // ceil(5/5)
  const auto& t = traces[0];
  REQUIRE(t.loss_sv.has_value());
  REQUIRE(t.raw_score.has_value());
  CHECK(t.combined_loss ==
        feedback::combined_loss(t.loss_vc, *t.loss_sv, cfg.alpha));
  CHECK(*t.loss_sv >= 0.0);
  CHECK(*t.loss_sv <= 1.0);
  CHECK(t.probe_pairs_used == 2);
  CHECK(*t.normalized_score >= 0.0);
  CHECK(*t.normalized_score <= 1.0);
}

TEST_CASE("an always-failing oracle degrades to conversion-only steps") {
  Rng rng(58);
  const int n_mels = 8;
  const auto dataset = tiny_dataset(rng, 5, 9, 4, 3 * n_mels);

  vcnet::SynthesisConfig scfg;
  scfg.mel.stft.frame_length = 64;
  scfg.mel.stft.hop = 16;
  scfg.mel.n_mels = n_mels;
  scfg.sample_rate = 8000;
  scfg.griffin_lim_iters = 2;
  const vcnet::FeatureSynthesizer synth(scfg);

  struct DeadOracle final : ScoreOracle {
    double score(const Waveform&) const override {
      throw OracleFailure("no voiced frames");
    }
  };
  DeadOracle oracle;
  feedback::FeedbackEnv env;
  env.synthesizer = &synth;
  env.oracle = &oracle;

  auto net = vcnet::make_net(4, 5, 3 * n_mels, 1, 11);
  vcnet::OptimizerState opt;
  FeedbackConfig cfg;
  cfg.alpha = 0.7;
  cfg.probes = 2;
  cfg.synth_iters = 2;
  const auto traces = feedback::train_feedback_vc(net, dataset, env, opt, cfg, 1, 3);
  REQUIRE(traces.size() == 1);
  CHECK_FALSE(traces[0].loss_sv.has_value());
  CHECK(traces[0].combined_loss == traces[0].loss_vc);
}

TEST_CASE("trace schedule length is epochs x ceil(n / batch)") {
  Rng rng(59);
  const auto dataset = tiny_dataset(rng, 7, 6, 3, 4);
  auto net = vcnet::make_net(3, 4, 4, 1, 21);
  vcnet::OptimizerState opt;  // minibatch 5
  feedback::FeedbackEnv env;
  FeedbackConfig cfg;
  cfg.alpha = 0.0;
  const auto traces = feedback::train_feedback_vc(net, dataset, env, opt, cfg, 3, 9);
  CHECK(traces.size() == 3u * 2u);
}
