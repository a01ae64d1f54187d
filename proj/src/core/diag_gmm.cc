// src/core/diag_gmm.cc

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

#include "vcfc/core/diag_gmm.hpp"

#include <cmath>
#include <string>

#include "vcfc/core/parallel.hpp"
#include "vcfc/core/rng.hpp"

namespace vcfc {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;
constexpr std::ptrdiff_t kEmBlock = 256;  // frames per reduction block
}  // namespace

void DiagGmm::prepare() {
  const Eigen::Index k = components();
  check(k >= 1, "GMM has no components");
  check(means.rows() == k && variances.rows() == k && variances.cols() == means.cols(),
        "GMM parameter shapes are inconsistent");
  check((variances.array() > 0.0).all(), "GMM variances must be positive");
  log_weights_ = weights.array().max(1e-300).log().matrix();
  inv_variances_ = variances.cwiseInverse();
  log_norm_.resize(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    log_norm_(c) = -0.5 * (dim() * kLog2Pi + variances.row(c).array().log().sum());
  }
  prepared_ = true;
}

void DiagGmm::log_joint(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                        Eigen::Ref<Eigen::RowVectorXd> out) const {
  check(prepared_, "DiagGmm::prepare() must be called before scoring");
  check(x.size() == dim(), "frame dimension does not match GMM");
  for (Eigen::Index c = 0; c < components(); ++c) {
    const double maha =
        ((x - means.row(c)).array().square() * inv_variances_.row(c).array()).sum();
    out(c) = log_weights_(c) + log_norm_(c) - 0.5 * maha;
  }
}

double DiagGmm::frame_posteriors(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                                 Eigen::Ref<Eigen::RowVectorXd> out) const {
  log_joint(x, out);
  const double m = out.maxCoeff();
  out.array() = (out.array() - m).exp();
  const double s = out.sum();
  out /= s;
  return m + std::log(s);
}

Matrix DiagGmm::posteriors(const Matrix& frames, double* total_log_likelihood) const {
  const Eigen::Index n = frames.rows();
  const Eigen::Index k = components();
  Matrix post(n, k);
  Vector ll(n);
  par::parallel_for(n, [&](std::ptrdiff_t t) {
    Eigen::RowVectorXd row(k);
    ll(t) = frame_posteriors(frames.row(t), row);
    post.row(t) = row;
  });
  if (total_log_likelihood != nullptr) {
    // Fixed-order summation, independent of thread count.
    double acc = 0.0;
    for (Eigen::Index t = 0; t < n; ++t) acc += ll(t);
    *total_log_likelihood = acc;
  }
  return post;
}

namespace {

// k-means++ style seeding: the first mean is a uniform draw, later means are
// drawn with probability proportional to squared distance from the chosen set.
Matrix seed_means(const Matrix& frames, int k, Rng& rng) {
  const Eigen::Index n = frames.rows();
  Matrix means(k, frames.cols());
  means.row(0) = frames.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
  Vector d2 = (frames.rowwise() - means.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick;
    if (total <= 0.0) {
      pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    } else {
      double target = rng.uniform() * total;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= d2(i);
        if (target <= 0.0) {
          pick = i;
          break;
        }
      }
    }
    means.row(c) = frames.row(pick);
    d2 = d2.cwiseMin((frames.rowwise() - means.row(c)).rowwise().squaredNorm());
  }
  return means;
}

struct EmStats {
  Vector occupancy;  // K
  Matrix first;      // K x D
  Matrix second;     // K x D
};

}  // namespace

DiagGmm fit_diag_gmm(const Matrix& frames, int n_components,
                     const GmmFitOptions& opts, GmmFitReport* report) {
  const Eigen::Index n = frames.rows();
  const Eigen::Index d = frames.cols();
  check(n_components >= 1, "GMM needs at least one component");
  check(n >= n_components, "GMM has fewer frames than components");
  check(all_finite(frames), "GMM training frames contain non-finite values");

  Rng rng(opts.seed);
  DiagGmm gmm;
  gmm.weights = Vector::Constant(n_components, 1.0 / n_components);
  gmm.means = seed_means(frames, n_components, rng);

  Eigen::RowVectorXd global_mean = frames.colwise().mean();
  Eigen::RowVectorXd global_var =
      ((frames.rowwise() - global_mean).array().square().colwise().sum() / n)
          .cwiseMax(opts.variance_floor);
  gmm.variances = global_var.replicate(n_components, 1);
  gmm.prepare();

  GmmFitReport local_report;
  GmmFitReport& rep = report != nullptr ? *report : local_report;

  for (int iter = 0; iter < opts.n_iters; ++iter) {
    // E-step: per-frame posteriors (disjoint rows), then a blocked reduction
    // so the accumulation order is fixed.
    double ll = 0.0;
    const Matrix post = gmm.posteriors(frames, &ll);
    rep.log_likelihood.push_back(ll);

    EmStats stats = par::blocked_reduce<EmStats>(
        n, kEmBlock,
        [&](EmStats& s) {
          s.occupancy = Vector::Zero(n_components);
          s.first = Matrix::Zero(n_components, d);
          s.second = Matrix::Zero(n_components, d);
        },
        [&](EmStats& s, std::ptrdiff_t t) {
          for (Eigen::Index c = 0; c < n_components; ++c) {
            const double g = post(t, c);
            if (g == 0.0) continue;
            s.occupancy(c) += g;
            s.first.row(c) += g * frames.row(t);
            s.second.row(c) += g * frames.row(t).array().square().matrix();
          }
        },
        [](EmStats& total, const EmStats& s) {
          total.occupancy += s.occupancy;
          total.first += s.first;
          total.second += s.second;
        });

    // M-step with reseeding of starved components.
    for (Eigen::Index c = 0; c < n_components; ++c) {
      const double occ = stats.occupancy(c);
      if (occ < 1e-8) {
        const Eigen::Index pick =
            static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
        gmm.means.row(c) = frames.row(pick);
        gmm.variances.row(c) = global_var;
        gmm.weights(c) = 1.0 / n;
        ++rep.reinitialized_components;
        log_warning("GMM component " + std::to_string(c) +
                    " starved during EM; reseeded from a random frame");
        continue;
      }
      gmm.weights(c) = occ / n;
      gmm.means.row(c) = stats.first.row(c) / occ;
      gmm.variances.row(c) =
          (stats.second.row(c) / occ - gmm.means.row(c).array().square().matrix())
              .cwiseMax(opts.variance_floor);
    }
    gmm.weights /= gmm.weights.sum();
    gmm.prepare();
  }
  return gmm;
}

}  // namespace vcfc
