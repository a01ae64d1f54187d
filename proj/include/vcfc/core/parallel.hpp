// include/vcfc/core/parallel.hpp

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

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vcfc::par {

// Numeric results must not depend on the number of threads. Two patterns
// keep that true:
//   parallel_for    — iterations write disjoint state only.
//   blocked_reduce  — accumulation happens inside fixed-size blocks (serial
//                     within a block) and blocks are joined in index order,
//                     so the summation order never changes.

int max_threads();
void set_num_threads(int n);

template <class F>
void parallel_for(std::ptrdiff_t n, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
#else
  for (std::ptrdiff_t i = 0; i < n; ++i) f(i);
#endif
}

// Acc must be default-constructible. init(acc) prepares one block accumulator,
// body(acc, i) folds element i into it, join(total, acc) folds a block into
// the running total. Blocks are [b*block_size, min((b+1)*block_size, n)).
template <class Acc, class InitF, class BodyF, class JoinF>
Acc blocked_reduce(std::ptrdiff_t n, std::ptrdiff_t block_size, InitF init,
                   BodyF body, JoinF join) {
  if (block_size < 1) block_size = 1;
  const std::ptrdiff_t n_blocks = (n + block_size - 1) / block_size;
  std::vector<Acc> blocks(static_cast<std::size_t>(n_blocks > 0 ? n_blocks : 0));
  for (auto& acc : blocks) init(acc);
  parallel_for(n_blocks, [&](std::ptrdiff_t b) {
    const std::ptrdiff_t lo = b * block_size;
    const std::ptrdiff_t hi = std::min(n, lo + block_size);
    for (std::ptrdiff_t i = lo; i < hi; ++i) body(blocks[static_cast<std::size_t>(b)], i);
  });
  Acc total;
  init(total);
  for (auto& acc : blocks) join(total, acc);
  return total;
}

}  // namespace vcfc::par
