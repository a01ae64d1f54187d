// include/vcfc/dsp/mel.hpp

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
#include "vcfc/dsp/stft.hpp"

namespace vcfc::dsp {

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular filters on the mel scale, rows are filters over the one-sided
// spectrum (n_fft/2 + 1 bins). Throws when a filter ends up with no support
// on the FFT grid, naming the filter index.
Matrix mel_filterbank(int n_fft, int n_mels, int sample_rate, double f_min,
                      double f_max);

struct MelConfig {
  StftConfig stft;
  int n_mels = 80;
  double f_min = 0.0;
  double f_max = 0.0;  // 0 means sample_rate / 2
  double log_floor = 1e-10;
};

// log(filterbank * |stft|^2 + floor), kind = mel.
FeatureSequence log_mel(const Waveform& w, const MelConfig& cfg);

struct MfccConfig {
  MelConfig mel;
  int n_ceps = 13;
  bool include_c0 = true;  // when false, coefficients 1..n_ceps are kept
};

// Orthonormal DCT-II over log-mel energies, kind = mfcc, dim = n_ceps.
FeatureSequence mfcc(const Waveform& w, const MfccConfig& cfg);

// Rows of the orthonormal DCT-II matrix used by mfcc().
Matrix dct_matrix(int n_ceps, int n_mels, bool include_c0);

// [static | delta | delta-delta] per frame; regression over +-window frames
// with edge replication.
FeatureSequence delta_features(const FeatureSequence& f, int window);

}  // namespace vcfc::dsp
