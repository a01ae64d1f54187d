// src/eval/eer.cc

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

#include "vcfc/eval/eer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "vcfc/core/types.hpp"

namespace vcfc::eval {

namespace {

using Wide = __int128;

Wide wide_gcd(Wide a, Wide b) {
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

double reduced_ratio(Wide num, Wide den) {
  const Wide g = wide_gcd(num < 0 ? -num : num, den < 0 ? -den : den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EerResult compute_eer(const std::vector<double>& genuine,
                      const std::vector<double>& imposter) {
  check(!genuine.empty(), "compute_eer: genuine score set is empty");
  check(!imposter.empty(), "compute_eer: imposter score set is empty");
  for (double s : genuine) check(std::isfinite(s), "compute_eer: non-finite score");
  for (double s : imposter) check(std::isfinite(s), "compute_eer: non-finite score");

  std::vector<double> g = genuine, im = imposter;
  std::sort(g.begin(), g.end());
  std::sort(im.begin(), im.end());
  const std::int64_t ng = static_cast<std::int64_t>(g.size());
  const std::int64_t ni = static_cast<std::int64_t>(im.size());

  // Candidate thresholds: every distinct score, plus sentinels below and
  // above. At threshold t the operating point is
  //   false rejections fr = #genuine < t, false accepts fa = #imposter >= t.
  std::vector<double> thresholds;
  thresholds.reserve(g.size() + im.size() + 2);
  thresholds.push_back(std::min(g.front(), im.front()) - 1.0);
  {
    std::vector<double> pooled;
    pooled.reserve(g.size() + im.size());
    pooled.insert(pooled.end(), g.begin(), g.end());
    pooled.insert(pooled.end(), im.begin(), im.end());
    std::sort(pooled.begin(), pooled.end());
    pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());
    thresholds.insert(thresholds.end(), pooled.begin(), pooled.end());
  }
  thresholds.push_back(std::max(g.back(), im.back()) + 1.0);

  // fr*ni - fa*ng is non-decreasing along the sweep: the first nonnegative
  // value brackets the crossing of the two error rates.
  std::int64_t prev_fr = 0, prev_fa = ni;
  Wide prev_d = -static_cast<Wide>(ni) * ng;
  double prev_t = thresholds.front();
  for (std::size_t j = 1; j < thresholds.size(); ++j) {
    const double t = thresholds[j];
    const std::int64_t fr =
        std::lower_bound(g.begin(), g.end(), t) - g.begin();
    const std::int64_t fa =
        im.end() - std::lower_bound(im.begin(), im.end(), t);
    const Wide d = static_cast<Wide>(fr) * ni - static_cast<Wide>(fa) * ng;
    if (d >= 0) {
      EerResult res;
      if (d == 0) {
        res.eer = reduced_ratio(fr, ng);
        res.threshold = t;
      } else {
        // Interpolate on the segment between the previous and this point.
        const Wide span = d - prev_d;  // > 0
        const Wide num = static_cast<Wide>(prev_fa) * span +
                         (-prev_d) * (static_cast<Wide>(fa) - prev_fa);
        const Wide den = static_cast<Wide>(ni) * span;
        res.eer = reduced_ratio(num, den);
        const double s = reduced_ratio(-prev_d, span);
        res.threshold = prev_t + s * (t - prev_t);
      }
      return res;
    }
    prev_fr = fr;
    prev_fa = fa;
    prev_d = d;
    prev_t = t;
  }
  (void)prev_fr;
  throw Error("compute_eer: no crossing found (internal error)");
}

}  // namespace vcfc::eval
