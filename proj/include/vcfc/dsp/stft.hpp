// include/vcfc/dsp/stft.hpp

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

namespace vcfc::dsp {

enum class Window { hann, hamming, rectangular };

Window window_from_name(const std::string& name);
std::string window_name(Window w);

// Periodic window of the given length.
Vector make_window(Window kind, int length);

struct StftConfig {
  int frame_length = 1024;  // also the FFT size; 513 analysis bins
  int hop = 256;
  Window window = Window::hann;
};

// Complex one-sided spectrogram, frames.row(t) holds bins 0..frame_length/2.
struct Spectrogram {
  ComplexMatrix frames;
  int frame_length = 0;
  int hop = 0;
  Window window = Window::hann;

  Eigen::Index num_frames() const { return frames.rows(); }
  Eigen::Index num_bins() const { return frames.cols(); }
};

struct MagnitudeSpectrogram {
  Matrix frames;  // elementwise >= 0
  int frame_length = 0;
  int hop = 0;
  Window window = Window::hann;

  Eigen::Index num_frames() const { return frames.rows(); }
  Eigen::Index num_bins() const { return frames.cols(); }
};

// Frame count for the no-padding policy: floor((len - frame)/hop) + 1.
Eigen::Index stft_num_frames(std::size_t num_samples, const StftConfig& cfg);

// Fails with "input too short" when the signal does not cover one frame.
Spectrogram stft(const Waveform& w, const StftConfig& cfg);

// Least-squares inverse: windowed overlap-add divided by the accumulated
// squared window. Output length is (N-1)*hop + frame_length.
Waveform istft(const Spectrogram& spec, int sample_rate);

MagnitudeSpectrogram magnitude(const Spectrogram& spec);
Matrix power_frames(const Spectrogram& spec);

}  // namespace vcfc::dsp
