// include/vcfc/ppg/ppg_io.hpp

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

#include "vcfc/core/types.hpp"

namespace vcfc::ppg {

// Feature matrix files: a header line "<kind> <N> <D>" where kind is "ppg",
// "mel" or "mfcc", then N whitespace-separated rows of D values. Posteriorgram
// rows must be probability simplices; rows whose sum is within 1e-3 of one are
// renormalized, anything further off is rejected with its row index.
FeatureSequence load_feature_matrix(const std::string& path);
void save_feature_matrix(const std::string& path, const FeatureSequence& f);

// load_feature_matrix + a check that the file holds posteriors.
FeatureSequence load_ppg(const std::string& path);

}  // namespace vcfc::ppg
