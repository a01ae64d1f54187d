// include/vcfc/vcnet/train.hpp

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

#include <optional>
#include <string>
#include <vector>

#include "vcfc/core/rng.hpp"
#include "vcfc/vcnet/net.hpp"

namespace vcfc::vcnet {

// Classical momentum: v <- momentum*v - lr*g; p <- p + v.
struct OptimizerState {
  double learning_rate = 0.002;
  double momentum = 0.9;
  int minibatch_size = 5;
  NetGradients velocity;
  bool velocity_ready = false;
};

void sgd_step(RecurrentConversionNet& net, const NetGradients& grads,
              OptimizerState& opt);

// A frame-aligned (PPG, acoustic target) pair from one utterance.
struct TrainPair {
  std::string utt_id;
  Matrix x;  // N x D_in
  Matrix y;  // N x D_out
};

struct TrainingStepReport {
  double loss_vc = 0.0;
  std::optional<double> loss_sv;  // absent for plain VC training
  double combined_loss = 0.0;     // equals loss_vc when loss_sv is absent
  double grad_norm = 0.0;
  long step_index = 0;
};

// Every pair must satisfy x.rows() == y.rows(); violations name the utterance.
void validate_dataset(const std::vector<TrainPair>& dataset, int input_dim,
                      int output_dim);

// Shuffled epoch schedules; each inner vector is one minibatch of dataset
// indices (the last batch of an epoch may be short). Both training loops use
// this, which is what makes the alpha=0 equivalence structural.
std::vector<std::vector<int>> make_minibatch_schedule(int n_items,
                                                      int batch_size,
                                                      int epochs, Rng& rng);

// One step of plain conversion training on a minibatch: mean VC loss over the
// batch, gradients accumulated per utterance in index order, one sgd_step.
TrainingStepReport vc_minibatch_step(RecurrentConversionNet& net,
                                     const std::vector<TrainPair>& dataset,
                                     const std::vector<int>& batch,
                                     OptimizerState& opt);

std::vector<TrainingStepReport> train_vc(RecurrentConversionNet& net,
                                         const std::vector<TrainPair>& dataset,
                                         OptimizerState& opt, int epochs,
                                         std::uint64_t seed);

}  // namespace vcfc::vcnet
