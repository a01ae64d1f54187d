// src/dsp/fft.cc

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

#include "vcfc/dsp/fft.hpp"

#include <cmath>

#include "vcfc/core/types.hpp"

namespace vcfc::dsp {

namespace {
constexpr double kPi = 3.14159265358979323846;
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Fft::Fft(int n) : n_(n), pow2_(is_pow2(n)) {
  check(n >= 1, "FFT size must be >= 1");
  if (!pow2_) return;
  bit_reverse_.resize(static_cast<std::size_t>(n));
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b) {
      if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
    }
    bit_reverse_[static_cast<std::size_t>(i)] = r;
  }
  twiddles_.resize(static_cast<std::size_t>(n / 2));
  for (int k = 0; k < n / 2; ++k) {
    const double ang = -2.0 * kPi * k / n;
    twiddles_[static_cast<std::size_t>(k)] = {std::cos(ang), std::sin(ang)};
  }
}

void Fft::forward(std::vector<std::complex<double>>& buf) const {
  check(static_cast<int>(buf.size()) == n_, "FFT buffer size mismatch");
  if (pow2_) {
    radix2(buf, false);
  } else {
    direct(buf, false);
  }
}

void Fft::inverse(std::vector<std::complex<double>>& buf) const {
  check(static_cast<int>(buf.size()) == n_, "FFT buffer size mismatch");
  if (pow2_) {
    radix2(buf, true);
  } else {
    direct(buf, true);
  }
  const double scale = 1.0 / n_;
  for (auto& v : buf) v *= scale;
}

void Fft::radix2(std::vector<std::complex<double>>& buf, bool inverse) const {
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    const int j = bit_reverse_[static_cast<std::size_t>(i)];
    if (j > i) std::swap(buf[static_cast<std::size_t>(i)], buf[static_cast<std::size_t>(j)]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len / 2;
    const int stride = n / len;
    for (int base = 0; base < n; base += len) {
      for (int k = 0; k < half; ++k) {
        std::complex<double> w = twiddles_[static_cast<std::size_t>(k * stride)];
        if (inverse) w = std::conj(w);
        const auto a = buf[static_cast<std::size_t>(base + k)];
        const auto b = buf[static_cast<std::size_t>(base + k + half)] * w;
        buf[static_cast<std::size_t>(base + k)] = a + b;
        buf[static_cast<std::size_t>(base + k + half)] = a - b;
      }
    }
  }
}

void Fft::direct(std::vector<std::complex<double>>& buf, bool inverse) const {
  const int n = n_;
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (int t = 0; t < n; ++t) {
      const double ang = sign * 2.0 * kPi * k * t / n;
      acc += buf[static_cast<std::size_t>(t)] *
             std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[static_cast<std::size_t>(k)] = acc;
  }
  buf = std::move(out);
}

}  // namespace vcfc::dsp
