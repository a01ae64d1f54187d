// src/vcnet/checkpoint.cc

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

#include "vcfc/vcnet/checkpoint.hpp"

#include <fstream>

#include "vcfc/core/matio.hpp"

namespace vcfc::vcnet {

void save_net(const std::string& path, const RecurrentConversionNet& net) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write net checkpoint: " + path);
  os << "vcfc-net v1\n";
  os << net.input_dim << ' ' << net.hidden_dim << ' ' << net.output_dim << ' '
     << net.layers.size() << '\n';
  for_each_tensor(net, [&os](const std::string& name, const auto& t) {
    os << "tensor " << name << ' ' << t.rows() << ' ' << t.cols() << '\n';
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      if (i) os << ' ';
      os << format_double(t.data()[i]);
    }
    os << '\n';
  });
  if (!os) throw Error("short write to net checkpoint: " + path);
}

RecurrentConversionNet load_net(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open net checkpoint: " + path);
  expect_token(is, "vcfc-net", path);
  expect_token(is, "v1", path);
  const int input_dim = static_cast<int>(read_long(is, path));
  const int hidden_dim = static_cast<int>(read_long(is, path));
  const int output_dim = static_cast<int>(read_long(is, path));
  const int n_layers = static_cast<int>(read_long(is, path));
  check(input_dim >= 1 && hidden_dim >= 1 && output_dim >= 1 && n_layers >= 1,
        "net checkpoint has invalid dimensions: " + path);

  // Rebuild the skeleton, then fill tensors in the canonical order.
  RecurrentConversionNet net = make_net(input_dim, hidden_dim, output_dim, n_layers, 0);
  for_each_tensor(net, [&is, &path](const std::string& name, auto& t) {
    expect_token(is, "tensor", path);
    expect_token(is, name, path);
    const long rows = read_long(is, path);
    const long cols = read_long(is, path);
    if (rows != t.rows() || cols != t.cols()) {
      throw Error("net checkpoint tensor " + name + " has shape " +
                  std::to_string(rows) + "x" + std::to_string(cols) +
                  ", expected " + std::to_string(t.rows()) + "x" +
                  std::to_string(t.cols()) + ": " + path);
    }
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      if (!(is >> t.data()[i])) {
        throw Error("truncated tensor " + name + " in " + path);
      }
    }
  });
  return net;
}

}  // namespace vcfc::vcnet
