// src/vcnet/net.cc

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

#include "vcfc/vcnet/net.hpp"

#include <cmath>

#include "vcfc/core/rng.hpp"

namespace vcfc::vcnet {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void fill_uniform(Matrix& m, Rng& rng, double lo, double hi) {
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(lo, hi);
}

void fill_uniform(Vector& v, Rng& rng, double lo, double hi) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.uniform(lo, hi);
}

// One direction of one layer. With reverse=false steps run 0..N-1, with
// reverse=true they run N-1..0; the trace is indexed by absolute frame either
// way.
void lstm_forward(const LstmDirection& p, const Matrix& x, bool reverse,
                  DirectionTrace& tr) {
  const Eigen::Index n = x.rows();
  const Eigen::Index h = p.w_rec.cols();
  tr.gate_i.resize(n, h);
  tr.gate_f.resize(n, h);
  tr.gate_g.resize(n, h);
  tr.gate_o.resize(n, h);
  tr.cell.resize(n, h);
  tr.hidden.resize(n, h);

  Vector h_prev = Vector::Zero(h);
  Vector c_prev = Vector::Zero(h);
  Vector z(4 * h);
  for (Eigen::Index step = 0; step < n; ++step) {
    const Eigen::Index t = reverse ? n - 1 - step : step;
    z.noalias() = p.w_in * x.row(t).transpose();
    z.noalias() += p.w_rec * h_prev;
    z += p.bias;
    for (Eigen::Index j = 0; j < h; ++j) {
      const double gi = sigmoid(z(j));
      const double gf = sigmoid(z(h + j));
      const double gg = std::tanh(z(2 * h + j));
      const double go = sigmoid(z(3 * h + j));
      const double c = gf * c_prev(j) + gi * gg;
      tr.gate_i(t, j) = gi;
      tr.gate_f(t, j) = gf;
      tr.gate_g(t, j) = gg;
      tr.gate_o(t, j) = go;
      tr.cell(t, j) = c;
      tr.hidden(t, j) = go * std::tanh(c);
    }
    h_prev = tr.hidden.row(t);
    c_prev = tr.cell.row(t);
  }
}

void lstm_backward(const LstmDirection& p, const Matrix& x, bool reverse,
                   const DirectionTrace& tr, const Matrix& dh_out,
                   LstmDirection& grads, Matrix& dx) {
  const Eigen::Index n = x.rows();
  const Eigen::Index h = p.w_rec.cols();

  Vector dh_rec = Vector::Zero(h);
  Vector dc_next = Vector::Zero(h);
  Vector dz(4 * h);
  for (Eigen::Index step = n - 1; step >= 0; --step) {
    const Eigen::Index t = reverse ? n - 1 - step : step;
    const Eigen::Index t_prev = reverse ? t + 1 : t - 1;
    const bool has_prev = t_prev >= 0 && t_prev < n;
    for (Eigen::Index j = 0; j < h; ++j) {
      const double dh = dh_out(t, j) + dh_rec(j);
      const double tc = std::tanh(tr.cell(t, j));
      const double go = tr.gate_o(t, j);
      const double dgo = dh * tc;
      const double dc = dc_next(j) + dh * go * (1.0 - tc * tc);
      const double gi = tr.gate_i(t, j);
      const double gf = tr.gate_f(t, j);
      const double gg = tr.gate_g(t, j);
      const double c_prev = has_prev ? tr.cell(t_prev, j) : 0.0;
      const double di = dc * gg;
      const double df = dc * c_prev;
      const double dg = dc * gi;
      dz(j) = di * gi * (1.0 - gi);
      dz(h + j) = df * gf * (1.0 - gf);
      dz(2 * h + j) = dg * (1.0 - gg * gg);
      dz(3 * h + j) = dgo * go * (1.0 - go);
      dc_next(j) = dc * gf;
    }
    grads.w_in.noalias() += dz * x.row(t);
    if (has_prev) {
      grads.w_rec.noalias() += dz * tr.hidden.row(t_prev);
    }
    grads.bias += dz;
    dx.row(t).noalias() += (p.w_in.transpose() * dz).transpose();
    dh_rec.noalias() = p.w_rec.transpose() * dz;
  }
}

void validate_net(const RecurrentConversionNet& net) {
  check(!net.layers.empty(), "net has no layers");
  check(net.w_out.rows() == net.output_dim &&
            net.w_out.cols() == 2 * net.hidden_dim,
        "net output projection has inconsistent shape");
}

}  // namespace

RecurrentConversionNet make_net(int input_dim, int hidden_dim, int output_dim,
                                int n_layers, std::uint64_t seed) {
  check(input_dim >= 1 && hidden_dim >= 1 && output_dim >= 1 && n_layers >= 1,
        "net dimensions must be positive");
  RecurrentConversionNet net;
  net.input_dim = input_dim;
  net.hidden_dim = hidden_dim;
  net.output_dim = output_dim;

  Rng rng(seed);
  const double lo = -0.08, hi = 0.08;
  for (int l = 0; l < n_layers; ++l) {
    const int d_in = l == 0 ? input_dim : 2 * hidden_dim;
    BlstmLayer layer;
    for (LstmDirection* dir : {&layer.fwd, &layer.bwd}) {
      dir->w_in.resize(4 * hidden_dim, d_in);
      dir->w_rec.resize(4 * hidden_dim, hidden_dim);
      dir->bias.resize(4 * hidden_dim);
      fill_uniform(dir->w_in, rng, lo, hi);
      fill_uniform(dir->w_rec, rng, lo, hi);
      fill_uniform(dir->bias, rng, lo, hi);
    }
    net.layers.push_back(std::move(layer));
  }
  net.w_out.resize(output_dim, 2 * hidden_dim);
  net.b_out.resize(output_dim);
  fill_uniform(net.w_out, rng, lo, hi);
  fill_uniform(net.b_out, rng, lo, hi);
  return net;
}

NetGradients zeros_like(const RecurrentConversionNet& net) {
  NetGradients g = net;
  for_each_tensor(g, [](const std::string&, auto& t) { t.setZero(); });
  return g;
}

void axpy(double a, const NetGradients& x, NetGradients& y) {
  check(x.layers.size() == y.layers.size(), "axpy: mismatched nets");
  for (std::size_t l = 0; l < x.layers.size(); ++l) {
    for (int dir = 0; dir < 2; ++dir) {
      const LstmDirection& xs = dir == 0 ? x.layers[l].fwd : x.layers[l].bwd;
      LstmDirection& ys = dir == 0 ? y.layers[l].fwd : y.layers[l].bwd;
      ys.w_in += a * xs.w_in;
      ys.w_rec += a * xs.w_rec;
      ys.bias += a * xs.bias;
    }
  }
  y.w_out += a * x.w_out;
  y.b_out += a * x.b_out;
}

void scale(NetGradients& g, double a) {
  for_each_tensor(g, [a](const std::string&, auto& t) { t *= a; });
}

double param_norm(const NetGradients& g) {
  double acc = 0.0;
  for_each_tensor(g, [&acc](const std::string&, const auto& t) {
    acc += t.squaredNorm();
  });
  return std::sqrt(acc);
}

Matrix net_forward(const RecurrentConversionNet& net, const Matrix& x,
                   ForwardTrace* trace) {
  validate_net(net);
  check(x.cols() == net.input_dim, "net input dimension mismatch");
  check(x.rows() >= 1, "net input must have at least one frame");

  ForwardTrace local;
  ForwardTrace& tr = trace != nullptr ? *trace : local;
  tr.layer_inputs.clear();
  tr.fwd.assign(net.layers.size(), {});
  tr.bwd.assign(net.layers.size(), {});

  Matrix cur = x;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    tr.layer_inputs.push_back(cur);
    lstm_forward(net.layers[l].fwd, cur, false, tr.fwd[l]);
    lstm_forward(net.layers[l].bwd, cur, true, tr.bwd[l]);
    Matrix out(cur.rows(), 2 * net.hidden_dim);
    out.leftCols(net.hidden_dim) = tr.fwd[l].hidden;
    out.rightCols(net.hidden_dim) = tr.bwd[l].hidden;
    cur = std::move(out);
  }
  tr.top = cur;
  Matrix y = cur * net.w_out.transpose();
  y.rowwise() += net.b_out.transpose();
  return y;
}

FeatureSequence forward(const RecurrentConversionNet& net,
                        const FeatureSequence& ppg) {
  validate_feature_sequence(ppg);
  FeatureSequence out;
  out.kind = FeatureKind::mel_deltas;
  out.frame_rate = ppg.frame_rate;
  out.frames = net_forward(net, ppg.frames);
  return out;
}

double loss_vc(const Matrix& target, const Matrix& predicted) {
  check(target.rows() == predicted.rows() && target.cols() == predicted.cols(),
        "loss_vc shape mismatch");
  check(target.size() > 0, "loss_vc on empty matrices");
  return (target - predicted).squaredNorm() / static_cast<double>(target.size());
}

Matrix loss_vc_grad(const Matrix& target, const Matrix& predicted) {
  check(target.rows() == predicted.rows() && target.cols() == predicted.cols(),
        "loss_vc shape mismatch");
  return 2.0 / static_cast<double>(target.size()) * (predicted - target);
}

NetGradients net_backward(const RecurrentConversionNet& net,
                          const ForwardTrace& trace, const Matrix& d_output) {
  validate_net(net);
  check(d_output.rows() == trace.top.rows() && d_output.cols() == net.output_dim,
        "net_backward output gradient shape mismatch");

  NetGradients grads = zeros_like(net);
  grads.w_out.noalias() = d_output.transpose() * trace.top;
  grads.b_out = d_output.colwise().sum();

  Matrix d_cur = d_output * net.w_out;  // N x 2H
  for (std::size_t li = net.layers.size(); li-- > 0;) {
    const Matrix& input = trace.layer_inputs[li];
    Matrix dx = Matrix::Zero(input.rows(), input.cols());
    lstm_backward(net.layers[li].fwd, input, false, trace.fwd[li],
                  d_cur.leftCols(net.hidden_dim), grads.layers[li].fwd, dx);
    lstm_backward(net.layers[li].bwd, input, true, trace.bwd[li],
                  d_cur.rightCols(net.hidden_dim), grads.layers[li].bwd, dx);
    d_cur = std::move(dx);
  }
  return grads;
}

NetGradients backward(const RecurrentConversionNet& net, const Matrix& x,
                      const Matrix& y, double* loss_out) {
  ForwardTrace trace;
  const Matrix predicted = net_forward(net, x, &trace);
  if (loss_out != nullptr) *loss_out = loss_vc(y, predicted);
  return net_backward(net, trace, loss_vc_grad(y, predicted));
}

}  // namespace vcfc::vcnet
