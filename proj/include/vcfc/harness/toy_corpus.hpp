// include/vcfc/harness/toy_corpus.hpp

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

#include <cstdint>
#include <string>

#include "vcfc/core/types.hpp"
#include "vcfc/harness/manifest.hpp"

namespace vcfc::harness {

// Synthetic speakers: a pulse-train source with per-speaker pitch, vocal
// tract scaling and idiosyncratic vowel coloring, driven through resonant
// filters over a shared vowel inventory. Half the targets are low-pitch
// ("m"), half high-pitch ("f").
struct ToyCorpusSpec {
  int n_targets = 6;
  int train_per_target = 100;
  int val_per_target = 20;
  int n_imposters = 10;
  int utts_per_imposter = 10;
  int n_background = 8;
  int utts_per_background = 20;
  double utt_seconds = 0.7;
  double utt_seconds_jitter = 0.15;
  int sample_rate = 16000;
  std::uint64_t seed = 1;
};

// Writes <out_dir>/<speaker>/<utt_id>.wav files plus a manifest; generation is
// bit-deterministic in the spec seed. Targets get train/validation splits,
// imposters get trial rows, background speakers get train rows.
Manifest generate_toy_corpus(const ToyCorpusSpec& spec,
                             const std::string& out_dir);

// One synthetic utterance; exposed for tests.
Waveform synthesize_toy_utterance(std::uint64_t speaker_seed,
                                  std::uint64_t utt_seed, bool high_pitch,
                                  double seconds, int sample_rate);

}  // namespace vcfc::harness
