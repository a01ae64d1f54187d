// include/vcfc/ref/reference.hpp

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

#include "vcfc/core/types.hpp"

// Plain serial reference implementations, deliberately naive: direct
// summations and exhaustive sweeps. Tests compare the production kernels
// against these, and the benchmark reports the speed gap. Production code
// never calls into this namespace.
namespace vcfc::ref {

// O(n^2) DFT of one real frame (any length).
std::vector<std::complex<double>> naive_dft(const std::vector<double>& frame);

// STFT via naive_dft per frame, one-sided bins, no padding policy.
ComplexMatrix naive_stft(const std::vector<double>& samples, int frame_length,
                         int hop, const Vector& window);

// Triple-loop filterbank application: out = power * fb^T.
Matrix naive_mel_apply(const Matrix& power, const Matrix& fb);

// Direct-summation orthonormal DCT-II over each row.
Matrix naive_dct2(const Matrix& rows, int n_ceps, bool include_c0);

// Two-loop mean squared error.
double naive_mse(const Matrix& a, const Matrix& b);

// Per-frame Bayes posteriors over diagonal Gaussians, plain loops.
Matrix naive_gmm_posteriors(const Matrix& frames, const Vector& weights,
                            const Matrix& means, const Matrix& variances);

// Exhaustive-threshold EER with linear interpolation between operating
// points (accept iff score >= threshold), double arithmetic throughout.
double brute_force_eer(std::vector<double> genuine, std::vector<double> imposter);

// Dominant eigenvector of a symmetric matrix by power iteration.
Vector power_iteration_top_direction(const Matrix& sym, int iters);

}  // namespace vcfc::ref
