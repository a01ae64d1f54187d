// src/asv/projection.cc

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

#include "vcfc/asv/projection.hpp"

#include <Eigen/SVD>
#include <string>

namespace vcfc::asv {

Projection fit_projection(const Matrix& supervectors, int d) {
  check(d >= 1, "projection dimension must be >= 1");
  check(supervectors.rows() >= d,
        "projection needs at least d training supervectors");

  Projection proj;
  proj.center = supervectors.colwise().mean().transpose();
  const Matrix centered = supervectors.rowwise() - proj.center.transpose();

  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double tol = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  if (rank < d) {
    throw Error("projection dimension " + std::to_string(d) +
                " exceeds the rank " + std::to_string(rank) +
                " of the centered supervector matrix");
  }
  proj.basis = svd.matrixV().leftCols(d).transpose();
  return proj;
}

}  // namespace vcfc::asv
