// include/vcfc/asv/supervector.hpp

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

#include "vcfc/asv/ubm.hpp"
#include "vcfc/core/types.hpp"

namespace vcfc::asv {

// MAP-adapted component means (relevance factor r): for each component,
// mean_hat = a*E + (1-a)*mu with a = occ/(occ + r).
Matrix map_adapt_means(const Ubm& ubm, const Matrix& frames, double relevance);

// Concatenation over components of sqrt(w_k) * (mean_hat_k - mu_k) / sigma_k,
// length n_components * D. Frames exactly at UBM behavior give ~0.
Vector supervector(const Ubm& ubm, const Matrix& frames, double relevance);

}  // namespace vcfc::asv
