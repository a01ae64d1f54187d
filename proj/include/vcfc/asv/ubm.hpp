// include/vcfc/asv/ubm.hpp

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

#include "vcfc/core/diag_gmm.hpp"
#include "vcfc/core/types.hpp"

namespace vcfc::asv {

// Universal background model over voiced acoustic frames.
struct Ubm {
  DiagGmm gmm;
};

// Requires at least 20 frames per component in the pool.
Ubm train_ubm(const Matrix& frame_pool, int n_components,
              const GmmFitOptions& opts, GmmFitReport* report = nullptr);

}  // namespace vcfc::asv
