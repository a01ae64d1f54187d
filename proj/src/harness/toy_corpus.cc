// src/harness/toy_corpus.cc

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

#include "vcfc/harness/toy_corpus.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "vcfc/core/rng.hpp"
#include "vcfc/dsp/wav.hpp"

namespace vcfc::harness {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Shared vowel inventory (F1/F2/F3 in Hz); speakers color it individually.
constexpr int kNumVowels = 5;
constexpr double kVowels[kNumVowels][3] = {
    {730.0, 1090.0, 2440.0},  // a
    {530.0, 1840.0, 2480.0},  // e
    {270.0, 2290.0, 3010.0},  // i
    {570.0, 840.0, 2410.0},   // o
    {300.0, 870.0, 2240.0},   // u
};
constexpr double kBandwidths[3] = {90.0, 110.0, 170.0};

struct VoiceParams {
  double pitch_hz;
  double tract_scale;
  double tilt;       // one-pole lowpass coefficient for spectral slope
  double noise_mix;  // aspiration level
  double vowel_color[kNumVowels][3];  // per-vowel formant multipliers
};

VoiceParams draw_voice(Rng& rng, bool high_pitch) {
  VoiceParams v;
  v.pitch_hz = high_pitch ? rng.uniform(175.0, 235.0) : rng.uniform(95.0, 135.0);
  v.tract_scale = high_pitch ? rng.uniform(1.06, 1.22) : rng.uniform(0.94, 1.10);
  v.tilt = rng.uniform(0.15, 0.45);
  v.noise_mix = rng.uniform(0.01, 0.05);
  for (int vw = 0; vw < kNumVowels; ++vw) {
    for (int f = 0; f < 3; ++f) {
      v.vowel_color[vw][f] = rng.uniform(0.93, 1.07);
    }
  }
  return v;
}

// Two-pole resonator with per-sample center frequency.
struct Resonator {
  double y1 = 0.0, y2 = 0.0;

  double tick(double x, double freq, double bandwidth, int sample_rate) {
    const double r = std::exp(-kPi * bandwidth / sample_rate);
    const double theta = 2.0 * kPi * freq / sample_rate;
    const double a1 = 2.0 * r * std::cos(theta);
    const double a2 = -r * r;
    const double g = 1.0 - r;
    const double y = g * x + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

}  // namespace

Waveform synthesize_toy_utterance(std::uint64_t speaker_seed,
                                  std::uint64_t utt_seed, bool high_pitch,
                                  double seconds, int sample_rate) {
  Rng speaker_rng(speaker_seed);
  const VoiceParams voice = draw_voice(speaker_rng, high_pitch);
  Rng rng(utt_seed);

  const int n = std::max(sample_rate / 4, static_cast<int>(seconds * sample_rate));
  const int lead = static_cast<int>(0.06 * sample_rate);
  const int tail = static_cast<int>(0.06 * sample_rate);
  const int voiced_len = n - lead - tail;

  // Vowel segments with short gaps; gaps give the energy VAD real work.
  struct Segment {
    int vowel;
    int start, length;
    bool gap_after;
  };
  const int n_segments = 2 + static_cast<int>(rng.below(3));
  std::vector<Segment> segments;
  int cursor = 0;
  for (int s = 0; s < n_segments; ++s) {
    Segment seg;
    seg.vowel = static_cast<int>(rng.below(kNumVowels));
    const int remaining = voiced_len - cursor;
    const int base = remaining / (n_segments - s);
    seg.length = std::max(static_cast<int>(0.06 * sample_rate),
                          static_cast<int>(base * rng.uniform(0.75, 1.05)));
    seg.length = std::min(seg.length, remaining);
    seg.start = cursor;
    seg.gap_after = s + 1 < n_segments && rng.uniform() < 0.4;
    cursor += seg.length;
    segments.push_back(seg);
    if (cursor >= voiced_len) break;
  }
  segments.back().length += voiced_len - cursor;

  // Per-sample formant targets with 25 ms transitions between segments.
  const int blend = static_cast<int>(0.025 * sample_rate);
  std::vector<std::array<double, 3>> formants(static_cast<std::size_t>(voiced_len));
  std::vector<double> voicing(static_cast<std::size_t>(voiced_len), 1.0);
  for (std::size_t si = 0; si < segments.size(); ++si) {
    const Segment& seg = segments[si];
    for (int i = 0; i < seg.length; ++i) {
      const int t = seg.start + i;
      if (t >= voiced_len) break;
      std::array<double, 3> f{};
      for (int k = 0; k < 3; ++k) {
        f[static_cast<std::size_t>(k)] = kVowels[seg.vowel][k] *
                                         voice.tract_scale *
                                         voice.vowel_color[seg.vowel][k];
      }
      if (i < blend && si > 0) {
        const Segment& prev = segments[si - 1];
        const double a = static_cast<double>(i) / blend;
        for (int k = 0; k < 3; ++k) {
          const double pf = kVowels[prev.vowel][k] * voice.tract_scale *
                            voice.vowel_color[prev.vowel][k];
          f[static_cast<std::size_t>(k)] =
              (1.0 - a) * pf + a * f[static_cast<std::size_t>(k)];
        }
      }
      formants[static_cast<std::size_t>(t)] = f;
      if (seg.gap_after && i >= seg.length - static_cast<int>(0.045 * sample_rate)) {
        voicing[static_cast<std::size_t>(t)] = 0.0;  // brief pause
      }
    }
  }

  // Pitch contour: slow vibrato, gentle declination, per-period jitter.
  const double vibrato_rate = rng.uniform(3.5, 5.5);
  const double vibrato_phase = rng.uniform(0.0, 2.0 * kPi);

  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(static_cast<std::size_t>(n), 0.0);

  Resonator r1, r2, r3;
  double phase = 1.0;  // fire a pulse on the first voiced sample
  double jitter = 1.0;
  double tilt_state = 0.0;
  for (int t = 0; t < voiced_len; ++t) {
    const double time = static_cast<double>(t) / sample_rate;
    const double f0 = voice.pitch_hz * jitter *
                      (1.0 + 0.035 * std::sin(2.0 * kPi * vibrato_rate * time +
                                              vibrato_phase)) *
                      (1.0 - 0.06 * time / seconds);
    double excitation = 0.0;
    if (voicing[static_cast<std::size_t>(t)] > 0.0) {
      phase += f0 / sample_rate;
      if (phase >= 1.0) {
        phase -= 1.0;
        excitation = 1.0;
        jitter = 1.0 + 0.015 * rng.normal();
      }
      excitation += voice.noise_mix * rng.normal();
    } else {
      excitation = 0.02 * rng.normal();  // breath during pauses
    }
    // Spectral tilt, then the formant cascade.
    tilt_state = (1.0 - voice.tilt) * excitation + voice.tilt * tilt_state;
    const auto& f = formants[static_cast<std::size_t>(t)];
    double y = r1.tick(tilt_state, f[0], kBandwidths[0], sample_rate);
    y = r2.tick(y, f[1], kBandwidths[1], sample_rate);
    y = r3.tick(y, f[2], kBandwidths[2], sample_rate);
    w.samples[static_cast<std::size_t>(lead + t)] = y;
  }

  // Attack/release envelope over the voiced region.
  const int ramp = static_cast<int>(0.03 * sample_rate);
  for (int i = 0; i < ramp && i < voiced_len; ++i) {
    const double a = 0.5 * (1.0 - std::cos(kPi * i / ramp));
    w.samples[static_cast<std::size_t>(lead + i)] *= a;
    w.samples[static_cast<std::size_t>(lead + voiced_len - 1 - i)] *= a;
  }

  double peak = 1e-12;
  for (double s : w.samples) peak = std::max(peak, std::abs(s));
  const double gain = 0.45 / peak;
  for (double& s : w.samples) s *= gain;
  return w;
}

namespace {

void emit_speaker(const ToyCorpusSpec& spec, const std::string& out_dir,
                  const std::string& speaker, bool high_pitch, int n_utts,
                  int split_train_count, const std::string& split_a,
                  const std::string& split_b, std::uint64_t speaker_index,
                  Manifest& manifest) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(out_dir) / speaker;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create corpus directory " + dir.string());

  const std::uint64_t speaker_seed = Rng::derive(spec.seed, speaker_index);
  Rng meta(Rng::derive(speaker_seed, 1));
  for (int u = 0; u < n_utts; ++u) {
    const double seconds =
        spec.utt_seconds +
        spec.utt_seconds_jitter * (2.0 * meta.uniform() - 1.0);
    const std::uint64_t utt_seed =
        Rng::derive(speaker_seed, 1000 + static_cast<std::uint64_t>(u));
    const Waveform w = synthesize_toy_utterance(speaker_seed, utt_seed,
                                                high_pitch, seconds,
                                                spec.sample_rate);
    char name[64];
    std::snprintf(name, sizeof(name), "%s_u%03d", speaker.c_str(), u);
    const fs::path wav_path = dir / (std::string(name) + ".wav");
    dsp::write_wav(wav_path.string(), w);

    ManifestRow row;
    row.utt_id = name;
    row.speaker_id = speaker;
    row.sex = high_pitch ? "f" : "m";
    row.path = wav_path.string();
    row.split = u < split_train_count ? split_a : split_b;
    manifest.rows.push_back(std::move(row));
  }
}

}  // namespace

Manifest generate_toy_corpus(const ToyCorpusSpec& spec,
                             const std::string& out_dir) {
  check(spec.n_targets >= 1 && spec.train_per_target >= 1 &&
            spec.val_per_target >= 1,
        "toy corpus needs at least one target with train and validation data");
  check(spec.sample_rate > 0 && spec.utt_seconds > 0.05,
        "toy corpus has invalid audio parameters");

  Manifest manifest;
  std::uint64_t speaker_index = 0;

  for (int s = 0; s < spec.n_targets; ++s) {
    const bool high_pitch = s >= (spec.n_targets + 1) / 2;
    char id[32];
    std::snprintf(id, sizeof(id), "tgt%c%02d", high_pitch ? 'f' : 'm',
                  s % ((spec.n_targets + 1) / 2) + 1);
    emit_speaker(spec, out_dir, id, high_pitch,
                 spec.train_per_target + spec.val_per_target,
                 spec.train_per_target, "train", "validation", speaker_index++,
                 manifest);
  }
  for (int s = 0; s < spec.n_imposters; ++s) {
    char id[32];
    std::snprintf(id, sizeof(id), "imp%02d", s + 1);
    emit_speaker(spec, out_dir, id, s % 2 == 1, spec.utts_per_imposter, 0,
                 "trial", "trial", speaker_index++, manifest);
  }
  for (int s = 0; s < spec.n_background; ++s) {
    char id[32];
    std::snprintf(id, sizeof(id), "bg%02d", s + 1);
    emit_speaker(spec, out_dir, id, s % 2 == 1, spec.utts_per_background,
                 spec.utts_per_background, "train", "train", speaker_index++,
                 manifest);
  }

  save_manifest((std::filesystem::path(out_dir) / "manifest.tsv").string(),
                manifest);
  return manifest;
}

}  // namespace vcfc::harness
