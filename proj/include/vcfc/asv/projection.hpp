// include/vcfc/asv/projection.hpp

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

#include "vcfc/core/types.hpp"

namespace vcfc::asv {

// Low-dimensional speaker space: principal directions of the centered
// supervector matrix.
struct Projection {
  Matrix basis;   // d x supervector_dim, orthonormal rows
  Vector center;  // training mean supervector

  Vector apply(const Vector& sv) const { return basis * (sv - center); }
};

// supervectors: one training supervector per row (n x SV). Throws when d
// exceeds the rank of the centered matrix.
Projection fit_projection(const Matrix& supervectors, int d);

}  // namespace vcfc::asv
