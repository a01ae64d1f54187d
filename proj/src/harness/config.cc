// src/harness/config.cc

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

#include "vcfc/harness/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vcfc/core/matio.hpp"

namespace vcfc::harness {

namespace {

struct KeySpec {
  const char* key;
  const char* kind;  // "int", "real", "text"
  const char* value;
};

// The full configuration surface. Section prefixes follow the module layout.
const KeySpec kKeys[] = {
    // 16 kHz analysis/synthesis used by the conversion side.
    {"dsp.sample_rate", "int", "16000"},
    {"dsp.frame_length", "int", "1024"},
    {"dsp.hop", "int", "256"},
    {"dsp.window", "text", "hann"},
    {"dsp.n_mels", "int", "80"},
    {"dsp.f_min", "real", "0"},
    {"dsp.f_max", "real", "0"},
    {"dsp.log_floor", "real", "1e-10"},
    {"dsp.delta_window", "int", "2"},
    {"dsp.griffin_lim_iters", "int", "60"},
    {"dsp.synthesis_log_cap", "real", "10"},
    // Content posteriorgram extractor.
    {"ppg.components", "int", "42"},
    {"ppg.em_iters", "int", "25"},
    {"ppg.variance_floor", "real", "1e-4"},
    {"ppg.mfcc_ceps", "int", "13"},
    {"ppg.mfcc_mels", "int", "40"},
    // Conversion network and optimizer.
    {"vcnet.hidden", "int", "32"},
    {"vcnet.layers", "int", "2"},
    {"vcnet.learning_rate", "real", "0.002"},
    {"vcnet.momentum", "real", "0.9"},
    {"vcnet.minibatch", "int", "5"},
    {"vcnet.epochs", "int", "30"},
    // Verifier.
    {"asv.sample_rate", "int", "8000"},
    {"asv.frame_length", "int", "256"},
    {"asv.hop", "int", "128"},
    {"asv.n_mels", "int", "24"},
    {"asv.n_ceps", "int", "13"},
    {"asv.ubm_components", "int", "64"},
    {"asv.em_iters", "int", "20"},
    {"asv.variance_floor", "real", "1e-4"},
    {"asv.map_relevance", "real", "4"},
    {"asv.embed_dim", "int", "40"},
    {"asv.vad_offset", "real", "0"},
    {"asv.use_vad", "int", "1"},
    // Score feedback.
    {"feedback.alpha", "real", "0.7"},
    {"feedback.probes", "int", "8"},
    {"feedback.probe_scale", "real", "0.05"},
    {"feedback.score_floor", "real", "-1"},
    {"feedback.score_ceiling", "real", "1"},
    {"feedback.transform", "text", "one_minus"},
    {"feedback.synth_iters", "int", "8"},
    {"feedback.epochs", "int", "10"},
    // Evaluation.
    {"eval.bins", "int", "30"},
    // Toy corpus.
    {"corpus.targets", "int", "6"},
    {"corpus.train_per_target", "int", "100"},
    {"corpus.val_per_target", "int", "20"},
    {"corpus.imposters", "int", "10"},
    {"corpus.utts_per_imposter", "int", "10"},
    {"corpus.background", "int", "8"},
    {"corpus.utts_per_background", "int", "20"},
    {"corpus.utt_seconds", "real", "0.7"},
    {"corpus.utt_seconds_jitter", "real", "0.15"},
    {"corpus.sample_rate", "int", "16000"},
    // Experiment-wide seed; phases derive their own streams from it.
    {"run.seed", "int", "1"},
};

std::string canonical_int(const std::string& raw, const std::string& key) {
  char* end = nullptr;
  const long v = std::strtol(raw.c_str(), &end, 10);
  if (end == raw.c_str() || *end != '\0') {
    throw Error("config key " + key + " expects an integer, got '" + raw + "'");
  }
  return std::to_string(v);
}

std::string canonical_real(const std::string& raw, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0') {
    throw Error("config key " + key + " expects a number, got '" + raw + "'");
  }
  return format_double(v);
}

std::string trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config::Config() {
  for (const KeySpec& spec : kKeys) {
    Entry e;
    e.kind = spec.kind == std::string("int")
                 ? Kind::integer
                 : (spec.kind == std::string("real") ? Kind::real : Kind::text);
    e.value = e.kind == Kind::real ? canonical_real(spec.value, spec.key)
                                   : spec.value;
    entries_[spec.key] = e;
  }
}

Config Config::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open config file: " + path);
  Config cfg;
  std::string line;
  while (std::getline(is, line)) cfg.apply_line(line);
  return cfg;
}

void Config::apply_line(const std::string& line) {
  const std::string stripped = trim(line);
  if (stripped.empty() || stripped[0] == '#') return;
  const std::size_t eq = stripped.find('=');
  if (eq == std::string::npos) {
    throw Error("malformed config line (expected key = value): " + line);
  }
  set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw Error("unknown config key: " + key);
  switch (it->second.kind) {
    case Kind::integer: it->second.value = canonical_int(value, key); break;
    case Kind::real: it->second.value = canonical_real(value, key); break;
    case Kind::text: it->second.value = value; break;
  }
}

const Config::Entry& Config::find(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw Error("unknown config key: " + key);
  return it->second;
}

long Config::get_int(const std::string& key) const {
  const Entry& e = find(key);
  check(e.kind == Kind::integer, "config key " + key + " is not an integer");
  return std::strtol(e.value.c_str(), nullptr, 10);
}

double Config::get_double(const std::string& key) const {
  const Entry& e = find(key);
  check(e.kind != Kind::text, "config key " + key + " is not numeric");
  return std::strtod(e.value.c_str(), nullptr);
}

std::string Config::get_string(const std::string& key) const {
  return find(key).value;
}

bool Config::get_bool(const std::string& key) const { return get_int(key) != 0; }

std::uint64_t Config::get_seed(const std::string& key) const {
  return static_cast<std::uint64_t>(get_int(key));
}

std::string Config::canonical_text() const {
  std::ostringstream os;
  for (const auto& [key, entry] : entries_) {
    os << key << " = " << entry.value << '\n';
  }
  return os.str();
}

std::string Config::hash() const {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_text())));
  return buf;
}

void Config::save(const std::string& path) const {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write config file: " + path);
  os << canonical_text();
  if (!os) throw Error("short write to config file: " + path);
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace vcfc::harness
