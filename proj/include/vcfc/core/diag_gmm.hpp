// include/vcfc/core/diag_gmm.hpp

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

#include <vector>

#include "vcfc/core/types.hpp"

namespace vcfc {

// Diagonal-covariance Gaussian mixture. Shared by the posteriorgram
// extractor and the verifier's background model.
struct DiagGmm {
  Vector weights;    // K, sums to 1
  Matrix means;      // K x D
  Matrix variances;  // K x D, floored

  Eigen::Index components() const { return weights.size(); }
  Eigen::Index dim() const { return means.cols(); }

  // Refreshes cached log weights / normalizers; call after editing params.
  void prepare();

  // Per-component log joint densities log(w_k) + log N(x; mu_k, var_k).
  void log_joint(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                 Eigen::Ref<Eigen::RowVectorXd> out) const;

  // Writes normalized posteriors for one frame, returns its log-likelihood.
  double frame_posteriors(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                          Eigen::Ref<Eigen::RowVectorXd> out) const;

  // Posteriors for every row of frames (N x K) plus the total log-likelihood.
  Matrix posteriors(const Matrix& frames, double* total_log_likelihood) const;

 private:
  Vector log_weights_;
  Vector log_norm_;       // -(1/2) sum_d log(2 pi var)
  Matrix inv_variances_;  // K x D
  bool prepared_ = false;
};

struct GmmFitOptions {
  int n_iters = 25;
  double variance_floor = 1e-4;
  std::uint64_t seed = 0;
};

struct GmmFitReport {
  // Data log-likelihood at the start of each EM iteration (before its
  // M-step); non-decreasing by the EM argument.
  std::vector<double> log_likelihood;
  int reinitialized_components = 0;
};

// EM fit with k-means++ style seeding from the frame pool. Components that
// lose all their mass are reseeded from a random frame (with a warning).
DiagGmm fit_diag_gmm(const Matrix& frames, int n_components,
                     const GmmFitOptions& opts, GmmFitReport* report = nullptr);

}  // namespace vcfc
