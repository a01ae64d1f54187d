// src/core/rng.cc

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

#include "vcfc/core/rng.hpp"

#include <cstdio>
#include <iostream>

#include "vcfc/core/types.hpp"

namespace vcfc {

void log_warning(const std::string& msg) {
  std::cerr << "[vcfc] warning: " << msg << "\n";
}

void validate_waveform(const Waveform& w) {
  check(w.sample_rate > 0, "waveform sample rate must be positive");
  for (double s : w.samples) {
    check(std::isfinite(s), "waveform contains non-finite samples");
  }
}

std::string feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::mel: return "mel";
    case FeatureKind::mfcc: return "mfcc";
    case FeatureKind::ppg: return "ppg";
    case FeatureKind::mel_deltas: return "mel_deltas";
  }
  return "unknown";
}

FeatureKind feature_kind_from_name(const std::string& name) {
  if (name == "mel") return FeatureKind::mel;
  if (name == "mfcc") return FeatureKind::mfcc;
  if (name == "ppg") return FeatureKind::ppg;
  if (name == "mel_deltas") return FeatureKind::mel_deltas;
  throw Error("unknown feature kind: " + name);
}

void validate_feature_sequence(const FeatureSequence& f) {
  check(f.num_frames() >= 1, "feature sequence must have at least one frame");
  check(all_finite(f.frames), "feature sequence contains non-finite values");
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error("Rng::below requires n > 0");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the combined value.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace vcfc
