// tests/parallel_test.cc

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

// The OpenMP kernels must produce results that do not depend on the thread
// count: disjoint writes for map-style loops, fixed-block accumulation for
// reductions. These tests run each kernel single- and multi-threaded and
// demand bitwise identical output.

#include <doctest.h>

#include "helpers.hpp"
#include "vcfc/core/diag_gmm.hpp"
#include "vcfc/core/parallel.hpp"
#include "vcfc/dsp/stft.hpp"
#include "vcfc/vcnet/train.hpp"

using namespace vcfc;

namespace {

template <class F>
auto with_threads(int n, F&& f) {
  const int before = par::max_threads();
  par::set_num_threads(n);
  auto result = f();
  par::set_num_threads(before);
  return result;
}

}  // namespace

TEST_CASE("blocked_reduce is independent of the thread count") {
  std::vector<double> values(10000);
  Rng rng(71);
  for (double& v : values) v = rng.uniform(-1.0, 1.0);

  auto reduce = [&] {
    return par::blocked_reduce<double>(
        static_cast<std::ptrdiff_t>(values.size()), 128,
        [](double& acc) { acc = 0.0; },
        [&](double& acc, std::ptrdiff_t i) { acc += values[static_cast<std::size_t>(i)]; },
        [](double& total, const double& acc) { total += acc; });
  };
  const double serial = with_threads(1, reduce);
  const double parallel = with_threads(4, reduce);
  CHECK(serial == parallel);
}

TEST_CASE("stft is bitwise identical across thread counts") {
  Rng rng(72);
  const Waveform w = test::random_waveform(rng, 8192, 16000);
  auto run = [&] { return dsp::stft(w, {1024, 256, dsp::Window::hann}); };
  const auto a = with_threads(1, run);
  const auto b = with_threads(4, run);
  CHECK((a.frames - b.frames).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("GMM fitting is bitwise identical across thread counts") {
  Rng rng(73);
  const Matrix frames = test::random_matrix(rng, 2000, 4, -1.0, 1.0);
  GmmFitOptions opts;
  opts.n_iters = 6;
  opts.seed = 9;
  auto run = [&] { return fit_diag_gmm(frames, 4, opts); };
  const DiagGmm a = with_threads(1, run);
  const DiagGmm b = with_threads(4, run);
  CHECK(test::exact_equal(a.weights, b.weights));
  CHECK(test::exact_equal(a.means, b.means));
  CHECK(test::exact_equal(a.variances, b.variances));
}

TEST_CASE("minibatch gradient accumulation is thread-count independent") {
  Rng rng(74);
  std::vector<vcnet::TrainPair> dataset;
  for (int u = 0; u < 6; ++u) {
    vcnet::TrainPair p;
    p.utt_id = "u" + std::to_string(u);
    p.x = test::random_matrix(rng, 12, 5, 0.0, 1.0);
    p.y = test::random_matrix(rng, 12, 7, -1.0, 1.0);
    dataset.push_back(std::move(p));
  }
  auto run = [&] {
    auto net = vcnet::make_net(5, 6, 7, 2, 4242);
    vcnet::OptimizerState opt;
    vcnet::train_vc(net, dataset, opt, 2, 11);
    return net;
  };
  const auto a = with_threads(1, run);
  const auto b = with_threads(4, run);
  CHECK(test::nets_identical(a, b));
}
