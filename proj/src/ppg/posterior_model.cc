// src/ppg/posterior_model.cc

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

#include "vcfc/ppg/posterior_model.hpp"

#include <fstream>

#include "vcfc/core/matio.hpp"
#include "vcfc/core/parallel.hpp"

namespace vcfc::ppg {

PosteriorModel fit_posterior_model(const FeatureSequence& pool,
                                   const PosteriorModelConfig& cfg,
                                   std::uint64_t seed, GmmFitReport* report) {
  validate_feature_sequence(pool);
  check(pool.num_frames() >= 10LL * cfg.n_components,
        "posterior model needs at least 10 frames per component");
  GmmFitOptions opts;
  opts.n_iters = cfg.em_iters;
  opts.variance_floor = cfg.variance_floor;
  opts.seed = seed;
  PosteriorModel m;
  m.gmm = fit_diag_gmm(pool.frames, cfg.n_components, opts, report);
  return m;
}

FeatureSequence extract_ppg(const FeatureSequence& f, const PosteriorModel& m) {
  validate_feature_sequence(f);
  if (f.dim() != m.input_dim()) {
    throw Error("feature dimension " + std::to_string(f.dim()) +
                " does not match posterior model input dimension " +
                std::to_string(m.input_dim()));
  }
  FeatureSequence out;
  out.kind = FeatureKind::ppg;
  out.frame_rate = f.frame_rate;
  out.frames = m.gmm.posteriors(f.frames, nullptr);
  return out;
}

void save_posterior_model(const std::string& path, const PosteriorModel& m) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write posterior model: " + path);
  os << "vcfc-ppg-model v1\n";
  os << m.gmm.components() << ' ' << m.gmm.dim() << '\n';
  write_vector(os, m.gmm.weights);
  write_matrix(os, m.gmm.means);
  write_matrix(os, m.gmm.variances);
  if (!os) throw Error("short write to posterior model: " + path);
}

PosteriorModel load_posterior_model(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open posterior model: " + path);
  expect_token(is, "vcfc-ppg-model", path);
  expect_token(is, "v1", path);
  const long k = read_long(is, path);
  const long d = read_long(is, path);
  check(k >= 1 && d >= 1, "posterior model has invalid dimensions: " + path);
  PosteriorModel m;
  m.gmm.weights = read_vector(is, k, path);
  m.gmm.means = read_matrix(is, k, d, path);
  m.gmm.variances = read_matrix(is, k, d, path);
  m.gmm.prepare();
  return m;
}

}  // namespace vcfc::ppg
