// src/vcnet/train.cc

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

#include "vcfc/vcnet/train.hpp"

#include <numeric>

#include "vcfc/core/parallel.hpp"

namespace vcfc::vcnet {

void sgd_step(RecurrentConversionNet& net, const NetGradients& grads,
              OptimizerState& opt) {
  if (!opt.velocity_ready) {
    opt.velocity = zeros_like(net);
    opt.velocity_ready = true;
  }
  scale(opt.velocity, opt.momentum);
  axpy(-opt.learning_rate, grads, opt.velocity);
  axpy(1.0, opt.velocity, net);
}

void validate_dataset(const std::vector<TrainPair>& dataset, int input_dim,
                      int output_dim) {
  check(!dataset.empty(), "training dataset is empty");
  for (const TrainPair& p : dataset) {
    if (p.x.rows() != p.y.rows()) {
      throw Error("utterance " + p.utt_id + " has misaligned features: " +
                  std::to_string(p.x.rows()) + " input frames vs " +
                  std::to_string(p.y.rows()) + " target frames");
    }
    if (p.x.cols() != input_dim || p.y.cols() != output_dim) {
      throw Error("utterance " + p.utt_id + " has unexpected feature dims");
    }
  }
}

std::vector<std::vector<int>> make_minibatch_schedule(int n_items,
                                                      int batch_size,
                                                      int epochs, Rng& rng) {
  check(n_items >= 1 && batch_size >= 1 && epochs >= 0,
        "invalid minibatch schedule parameters");
  std::vector<std::vector<int>> schedule;
  std::vector<int> order(static_cast<std::size_t>(n_items));
  std::iota(order.begin(), order.end(), 0);
  for (int e = 0; e < epochs; ++e) {
    rng.shuffle(order);
    for (int start = 0; start < n_items; start += batch_size) {
      const int end = std::min(n_items, start + batch_size);
      schedule.emplace_back(order.begin() + start, order.begin() + end);
    }
  }
  return schedule;
}

TrainingStepReport vc_minibatch_step(RecurrentConversionNet& net,
                                     const std::vector<TrainPair>& dataset,
                                     const std::vector<int>& batch,
                                     OptimizerState& opt) {
  const std::size_t b = batch.size();
  check(b >= 1, "empty minibatch");

  // Per-utterance gradients land in their own slots; the combination below
  // runs in batch order so the result is independent of thread count.
  std::vector<NetGradients> grads(b);
  std::vector<double> losses(b, 0.0);
  par::parallel_for(static_cast<std::ptrdiff_t>(b), [&](std::ptrdiff_t i) {
    const TrainPair& p = dataset[static_cast<std::size_t>(batch[static_cast<std::size_t>(i)])];
    grads[static_cast<std::size_t>(i)] = backward(net, p.x, p.y, &losses[static_cast<std::size_t>(i)]);
  });

  NetGradients total = std::move(grads[0]);
  for (std::size_t i = 1; i < b; ++i) axpy(1.0, grads[i], total);
  scale(total, 1.0 / static_cast<double>(b));

  TrainingStepReport report;
  double loss_acc = 0.0;
  for (double l : losses) loss_acc += l;
  report.loss_vc = loss_acc / static_cast<double>(b);
  report.combined_loss = report.loss_vc;
  report.grad_norm = param_norm(total);

  sgd_step(net, total, opt);
  return report;
}

std::vector<TrainingStepReport> train_vc(RecurrentConversionNet& net,
                                         const std::vector<TrainPair>& dataset,
                                         OptimizerState& opt, int epochs,
                                         std::uint64_t seed) {
  validate_dataset(dataset, net.input_dim, net.output_dim);
  Rng rng(seed);
  const auto schedule = make_minibatch_schedule(
      static_cast<int>(dataset.size()), opt.minibatch_size, epochs, rng);
  std::vector<TrainingStepReport> reports;
  reports.reserve(schedule.size());
  long step = 0;
  for (const auto& batch : schedule) {
    TrainingStepReport r = vc_minibatch_step(net, dataset, batch, opt);
    r.step_index = step++;
    reports.push_back(r);
  }
  return reports;
}

}  // namespace vcfc::vcnet
