// include/vcfc/asv/verifier.hpp

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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vcfc/asv/projection.hpp"
#include "vcfc/asv/ubm.hpp"
#include "vcfc/core/score_oracle.hpp"
#include "vcfc/dsp/mel.hpp"
#include "vcfc/dsp/vad.hpp"

namespace vcfc::asv {

struct AsvConfig {
  int sample_rate = 8000;
  dsp::MfccConfig mfcc;   // defaults set by default_asv_config()
  dsp::VadConfig vad;
  bool use_vad = true;
  int ubm_components = 64;
  double map_relevance = 4.0;
  int embed_dim = 40;
  int em_iters = 20;
  double variance_floor = 1e-4;
};

// 8 kHz front end, 13 cepstra without c0 (keeps the cosine score invariant
// to input gain), modest model sizes.
AsvConfig default_asv_config();

// The verifier. Everything here is internal to the defender; attackers get
// a ScoreOracle and nothing else.
class BlackBoxVerifier {
 public:
  BlackBoxVerifier() = default;
  BlackBoxVerifier(AsvConfig cfg, Ubm ubm, Projection proj);

  // Voiced acoustic frames at the verifier's rate (resamples internally).
  // Throws OracleFailure("no voiced frames") when VAD rejects everything.
  Matrix front_end(const Waveform& w) const;

  // Length-normalized projected supervector.
  Vector embed(const Waveform& w) const;

  // Enrollment model: normalized mean of the utterance embeddings.
  // Re-enrolling an id replaces its previous model.
  void enroll(const std::string& speaker_id,
              const std::vector<Waveform>& utterances);

  // Cosine similarity in [-1, 1] between the query and the enrollment.
  double blackbox_score(const Waveform& w, const std::string& speaker_id) const;

  bool is_enrolled(const std::string& speaker_id) const;
  std::vector<std::string> enrolled_speakers() const;

  const AsvConfig& config() const { return cfg_; }
  const Ubm& ubm() const { return ubm_; }
  const Projection& projection() const { return proj_; }
  const std::map<std::string, Vector>& enrollments() const { return enrolled_; }
  void set_enrollment(const std::string& speaker_id, const Vector& embedding);

 private:
  AsvConfig cfg_;
  Ubm ubm_;
  Projection proj_;
  std::map<std::string, Vector> enrolled_;  // unit-normalized
};

void save_verifier(const std::string& path, const BlackBoxVerifier& v);
BlackBoxVerifier load_verifier(const std::string& path);

// The only attacker-visible handle: binds a verifier and a claimed identity.
std::unique_ptr<ScoreOracle> make_score_oracle(const BlackBoxVerifier& v,
                                               const std::string& speaker_id);

// Optional audit sink: "trial_id speaker_id score" per query.
class ScoreAuditLog {
 public:
  explicit ScoreAuditLog(const std::string& path);
  ~ScoreAuditLog();
  void record(const std::string& trial_id, const std::string& speaker_id,
              double score);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vcfc::asv
