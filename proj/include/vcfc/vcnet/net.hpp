// include/vcfc/vcnet/net.hpp

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

#include <cstdint>
#include <string>
#include <vector>

#include "vcfc/core/types.hpp"

namespace vcfc::vcnet {

// One LSTM direction. Gates are stacked [input; forget; cell; output] along
// the 4H axis.
struct LstmDirection {
  Matrix w_in;   // 4H x D_in
  Matrix w_rec;  // 4H x H
  Vector bias;   // 4H
};

struct BlstmLayer {
  LstmDirection fwd;
  LstmDirection bwd;
};

// Bidirectional recurrent conversion model: stacked BLSTM layers and a linear
// projection from the concatenated hidden states to the acoustic features.
struct RecurrentConversionNet {
  std::vector<BlstmLayer> layers;
  Matrix w_out;  // D_out x 2H
  Vector b_out;  // D_out
  int input_dim = 0;
  int hidden_dim = 0;
  int output_dim = 0;
};

// Gradients (and optimizer velocity) share the parameter layout.
using NetGradients = RecurrentConversionNet;

RecurrentConversionNet make_net(int input_dim, int hidden_dim, int output_dim,
                                int n_layers, std::uint64_t seed);
NetGradients zeros_like(const RecurrentConversionNet& net);

// y += a * x over every parameter tensor.
void axpy(double a, const NetGradients& x, NetGradients& y);
void scale(NetGradients& g, double a);
double param_norm(const NetGradients& g);

// Fixed iteration order over all parameter tensors; used by the optimizer,
// checkpoints and the finite-difference tests.
template <class F>
void for_each_tensor(RecurrentConversionNet& net, F&& f) {
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    auto& layer = net.layers[l];
    const std::string tag = "layer" + std::to_string(l);
    f(tag + ".fwd.w_in", layer.fwd.w_in);
    f(tag + ".fwd.w_rec", layer.fwd.w_rec);
    f(tag + ".fwd.bias", layer.fwd.bias);
    f(tag + ".bwd.w_in", layer.bwd.w_in);
    f(tag + ".bwd.w_rec", layer.bwd.w_rec);
    f(tag + ".bwd.bias", layer.bwd.bias);
  }
  f("w_out", net.w_out);
  f("b_out", net.b_out);
}

template <class F>
void for_each_tensor(const RecurrentConversionNet& net, F&& f) {
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& layer = net.layers[l];
    const std::string tag = "layer" + std::to_string(l);
    f(tag + ".fwd.w_in", layer.fwd.w_in);
    f(tag + ".fwd.w_rec", layer.fwd.w_rec);
    f(tag + ".fwd.bias", layer.fwd.bias);
    f(tag + ".bwd.w_in", layer.bwd.w_in);
    f(tag + ".bwd.w_rec", layer.bwd.w_rec);
    f(tag + ".bwd.bias", layer.bwd.bias);
  }
  f("w_out", net.w_out);
  f("b_out", net.b_out);
}

// Cached activations for backpropagation through time.
struct DirectionTrace {
  Matrix gate_i, gate_f, gate_g, gate_o;  // N x H
  Matrix cell, hidden;                    // N x H
};

struct ForwardTrace {
  std::vector<Matrix> layer_inputs;       // input of each layer, N x D_l
  std::vector<DirectionTrace> fwd, bwd;   // one per layer
  Matrix top;                             // N x 2H
};

// Plain forward pass; output is N x D_out with the same N as the input.
Matrix net_forward(const RecurrentConversionNet& net, const Matrix& x,
                   ForwardTrace* trace = nullptr);

// Spec-facing wrapper with feature bookkeeping (kind = mel_deltas).
FeatureSequence forward(const RecurrentConversionNet& net,
                        const FeatureSequence& ppg);

// Mean over all N*D elements of the squared difference.
double loss_vc(const Matrix& target, const Matrix& predicted);
Matrix loss_vc_grad(const Matrix& target, const Matrix& predicted);

// Backpropagates an arbitrary output gradient through the net.
NetGradients net_backward(const RecurrentConversionNet& net,
                          const ForwardTrace& trace, const Matrix& d_output);

// Gradient of loss_vc(y, forward(net, x)) w.r.t. every parameter.
NetGradients backward(const RecurrentConversionNet& net, const Matrix& x,
                      const Matrix& y, double* loss_out = nullptr);

}  // namespace vcfc::vcnet
