// include/vcfc/dsp/fft.hpp

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

#include <complex>
#include <vector>

namespace vcfc::dsp {

// Iterative radix-2 FFT with precomputed twiddles. Power-of-two sizes take
// the fast path; other sizes fall back to a direct O(n^2) transform so that
// unusual frame lengths still work at desk scale.
class Fft {
 public:
  explicit Fft(int n);

  int size() const { return n_; }
  void forward(std::vector<std::complex<double>>& buf) const;
  void inverse(std::vector<std::complex<double>>& buf) const;

 private:
  void radix2(std::vector<std::complex<double>>& buf, bool inverse) const;
  void direct(std::vector<std::complex<double>>& buf, bool inverse) const;

  int n_;
  bool pow2_;
  std::vector<int> bit_reverse_;
  std::vector<std::complex<double>> twiddles_;  // exp(-2*pi*i*k/n), k < n/2
};

}  // namespace vcfc::dsp
