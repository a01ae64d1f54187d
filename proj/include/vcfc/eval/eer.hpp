// include/vcfc/eval/eer.hpp

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

namespace vcfc::eval {

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
};

// Equal error rate with linear interpolation between adjacent ROC operating
// points (accept iff score >= threshold). The crossing is solved in integer
// arithmetic over trial counts, so rank statistics determine the result: any
// strictly increasing transform of all scores leaves the EER unchanged, and
// ties resolve toward the lower threshold.
EerResult compute_eer(const std::vector<double>& genuine,
                      const std::vector<double>& imposter);

}  // namespace vcfc::eval
