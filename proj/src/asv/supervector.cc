// src/asv/supervector.cc

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

#include "vcfc/asv/supervector.hpp"

#include <cmath>

namespace vcfc::asv {

Matrix map_adapt_means(const Ubm& ubm, const Matrix& frames, double relevance) {
  check(frames.rows() >= 1, "no voiced frames");
  check(frames.cols() == ubm.gmm.dim(), "frame dimension does not match UBM");
  check(relevance >= 0.0, "MAP relevance factor must be nonnegative");

  const Matrix post = ubm.gmm.posteriors(frames, nullptr);
  const Eigen::Index k = ubm.gmm.components();

  Matrix adapted(k, ubm.gmm.dim());
  for (Eigen::Index c = 0; c < k; ++c) {
    const double occ = post.col(c).sum();
    if (occ <= 0.0) {
      adapted.row(c) = ubm.gmm.means.row(c);
      continue;
    }
    const Eigen::RowVectorXd mean_stat = (post.col(c).transpose() * frames) / occ;
    const double a = occ / (occ + relevance);
    adapted.row(c) = a * mean_stat + (1.0 - a) * ubm.gmm.means.row(c);
  }
  return adapted;
}

Vector supervector(const Ubm& ubm, const Matrix& frames, double relevance) {
  const Matrix adapted = map_adapt_means(ubm, frames, relevance);
  const Eigen::Index k = ubm.gmm.components();
  const Eigen::Index d = ubm.gmm.dim();
  Vector sv(k * d);
  for (Eigen::Index c = 0; c < k; ++c) {
    const double w = std::sqrt(ubm.gmm.weights(c));
    sv.segment(c * d, d) =
        (w * (adapted.row(c) - ubm.gmm.means.row(c)).array() /
         ubm.gmm.variances.row(c).array().sqrt())
            .transpose();
  }
  return sv;
}

}  // namespace vcfc::asv
