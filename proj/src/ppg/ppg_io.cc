// src/ppg/ppg_io.cc

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

#include "vcfc/ppg/ppg_io.hpp"

#include <cmath>
#include <fstream>

#include "vcfc/core/matio.hpp"

namespace vcfc::ppg {

namespace {
constexpr double kRenormTolerance = 1e-3;
}

FeatureSequence load_feature_matrix(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open feature matrix: " + path);
  const std::string kind = read_token(is, path);
  const long n = read_long(is, path);
  const long d = read_long(is, path);
  check(n >= 1 && d >= 1, "feature matrix has invalid header: " + path);

  FeatureSequence f;
  f.kind = feature_kind_from_name(kind);
  f.frames = read_matrix(is, n, d, path);
  check(all_finite(f.frames), "feature matrix has non-finite values: " + path);

  if (f.kind == FeatureKind::ppg) {
    for (Eigen::Index r = 0; r < f.frames.rows(); ++r) {
      if ((f.frames.row(r).array() < 0.0).any()) {
        throw Error("ppg row " + std::to_string(r) + " has negative entries in " + path);
      }
      const double sum = f.frames.row(r).sum();
      if (std::abs(sum - 1.0) > kRenormTolerance) {
        throw Error("ppg row " + std::to_string(r) + " sums to " +
                    format_double(sum) + ", outside tolerance, in " + path);
      }
      f.frames.row(r) /= sum;
    }
  }
  return f;
}

void save_feature_matrix(const std::string& path, const FeatureSequence& f) {
  validate_feature_sequence(f);
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write feature matrix: " + path);
  os << feature_kind_name(f.kind) << ' ' << f.num_frames() << ' ' << f.dim() << '\n';
  write_matrix(os, f.frames);
  if (!os) throw Error("short write to feature matrix: " + path);
}

FeatureSequence load_ppg(const std::string& path) {
  FeatureSequence f = load_feature_matrix(path);
  if (f.kind != FeatureKind::ppg) {
    throw Error("expected a ppg matrix in " + path + ", found " +
                feature_kind_name(f.kind));
  }
  return f;
}

}  // namespace vcfc::ppg
