// include/vcfc/ppg/posterior_model.hpp

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

#include <string>

#include "vcfc/core/diag_gmm.hpp"
#include "vcfc/core/types.hpp"

namespace vcfc::ppg {

struct PosteriorModelConfig {
  int n_components = 42;
  int em_iters = 25;
  double variance_floor = 1e-4;
};

// Posteriorgram extractor: a diagonal GMM over acoustic frames whose
// per-frame component posteriors serve as content features.
struct PosteriorModel {
  DiagGmm gmm;

  Eigen::Index n_components() const { return gmm.components(); }
  Eigen::Index input_dim() const { return gmm.dim(); }
};

// Requires at least 10 frames per component in the pool.
PosteriorModel fit_posterior_model(const FeatureSequence& pool,
                                   const PosteriorModelConfig& cfg,
                                   std::uint64_t seed,
                                   GmmFitReport* report = nullptr);

// Per-frame posteriors; every row is a probability simplex.
FeatureSequence extract_ppg(const FeatureSequence& f, const PosteriorModel& m);

void save_posterior_model(const std::string& path, const PosteriorModel& m);
PosteriorModel load_posterior_model(const std::string& path);

}  // namespace vcfc::ppg
