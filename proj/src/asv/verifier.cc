// src/asv/verifier.cc

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

#include "vcfc/asv/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "vcfc/asv/supervector.hpp"
#include "vcfc/core/matio.hpp"
#include "vcfc/dsp/resample.hpp"

namespace vcfc::asv {

AsvConfig default_asv_config() {
  AsvConfig cfg;
  cfg.sample_rate = 8000;
  cfg.mfcc.mel.stft.frame_length = 256;
  cfg.mfcc.mel.stft.hop = 128;
  cfg.mfcc.mel.n_mels = 24;
  cfg.mfcc.mel.f_min = 0.0;
  cfg.mfcc.mel.f_max = 0.0;  // Nyquist
  cfg.mfcc.n_ceps = 13;
  cfg.mfcc.include_c0 = false;
  cfg.vad.frame_length = 256;
  cfg.vad.hop = 128;
  cfg.vad.offset = 0.0;
  return cfg;
}

BlackBoxVerifier::BlackBoxVerifier(AsvConfig cfg, Ubm ubm, Projection proj)
    : cfg_(std::move(cfg)), ubm_(std::move(ubm)), proj_(std::move(proj)) {
  check(ubm_.gmm.components() == cfg_.ubm_components,
        "UBM component count does not match the verifier config");
  check(proj_.basis.rows() == cfg_.embed_dim,
        "projection dimension does not match the verifier config");
}

Matrix BlackBoxVerifier::front_end(const Waveform& w) const {
  Waveform at_rate = w.sample_rate == cfg_.sample_rate
                         ? w
                         : dsp::resample(w, cfg_.sample_rate);
  const FeatureSequence feats = dsp::mfcc(at_rate, cfg_.mfcc);
  if (!cfg_.use_vad) return feats.frames;
  const std::vector<bool> mask = dsp::energy_vad(at_rate, cfg_.vad);
  check(static_cast<Eigen::Index>(mask.size()) == feats.num_frames(),
        "VAD and MFCC framings disagree");
  Matrix voiced = dsp::select_rows(feats.frames, mask);
  if (voiced.rows() == 0) throw OracleFailure("no voiced frames");
  return voiced;
}

Vector BlackBoxVerifier::embed(const Waveform& w) const {
  const Matrix frames = front_end(w);
  const Vector sv = supervector(ubm_, frames, cfg_.map_relevance);
  Vector e = proj_.apply(sv);
  const double n = e.norm();
  if (!(n > 1e-12)) throw OracleFailure("degenerate embedding (zero norm)");
  return e / n;
}

void BlackBoxVerifier::enroll(const std::string& speaker_id,
                              const std::vector<Waveform>& utterances) {
  check(!utterances.empty(), "enroll needs at least one utterance");
  Vector mean = Vector::Zero(cfg_.embed_dim);
  for (const Waveform& u : utterances) mean += embed(u);
  mean /= static_cast<double>(utterances.size());
  const double n = mean.norm();
  if (!(n > 1e-12)) throw Error("enrollment collapsed to the zero vector");
  enrolled_[speaker_id] = mean / n;
}

double BlackBoxVerifier::blackbox_score(const Waveform& w,
                                        const std::string& speaker_id) const {
  const auto it = enrolled_.find(speaker_id);
  if (it == enrolled_.end()) throw Error("unknown speaker id: " + speaker_id);
  const Vector e = embed(w);
  const double score = e.dot(it->second);
  return std::clamp(score, -1.0, 1.0);
}

bool BlackBoxVerifier::is_enrolled(const std::string& speaker_id) const {
  return enrolled_.count(speaker_id) > 0;
}

std::vector<std::string> BlackBoxVerifier::enrolled_speakers() const {
  std::vector<std::string> out;
  out.reserve(enrolled_.size());
  for (const auto& [id, e] : enrolled_) out.push_back(id);
  return out;
}

void BlackBoxVerifier::set_enrollment(const std::string& speaker_id,
                                      const Vector& embedding) {
  check(embedding.size() == cfg_.embed_dim, "enrollment dimension mismatch");
  const double n = embedding.norm();
  check(n > 1e-12, "enrollment must have positive norm");
  enrolled_[speaker_id] = embedding / n;
}

void save_verifier(const std::string& path, const BlackBoxVerifier& v) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write verifier checkpoint: " + path);
  const AsvConfig& c = v.config();
  os << "vcfc-verifier v1\n";
  os << c.sample_rate << ' ' << c.mfcc.mel.stft.frame_length << ' '
     << c.mfcc.mel.stft.hop << ' ' << c.mfcc.mel.n_mels << ' '
     << format_double(c.mfcc.mel.f_min) << ' ' << format_double(c.mfcc.mel.f_max)
     << ' ' << format_double(c.mfcc.mel.log_floor) << ' ' << c.mfcc.n_ceps << ' '
     << (c.mfcc.include_c0 ? 1 : 0) << ' ' << (c.use_vad ? 1 : 0) << ' '
     << format_double(c.vad.offset) << ' ' << c.ubm_components << ' '
     << format_double(c.map_relevance) << ' ' << c.embed_dim << '\n';
  os << "ubm " << v.ubm().gmm.components() << ' ' << v.ubm().gmm.dim() << '\n';
  write_vector(os, v.ubm().gmm.weights);
  write_matrix(os, v.ubm().gmm.means);
  write_matrix(os, v.ubm().gmm.variances);
  os << "projection " << v.projection().basis.rows() << ' '
     << v.projection().basis.cols() << '\n';
  write_matrix(os, v.projection().basis);
  write_vector(os, v.projection().center);
  os << "enrollments " << v.enrollments().size() << '\n';
  for (const auto& [id, e] : v.enrollments()) {
    os << id << ' ' << e.size() << '\n';
    write_vector(os, e);
  }
  if (!os) throw Error("short write to verifier checkpoint: " + path);
}

BlackBoxVerifier load_verifier(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open verifier checkpoint: " + path);
  expect_token(is, "vcfc-verifier", path);
  expect_token(is, "v1", path);

  AsvConfig c = default_asv_config();
  c.sample_rate = static_cast<int>(read_long(is, path));
  c.mfcc.mel.stft.frame_length = static_cast<int>(read_long(is, path));
  c.mfcc.mel.stft.hop = static_cast<int>(read_long(is, path));
  c.mfcc.mel.n_mels = static_cast<int>(read_long(is, path));
  c.mfcc.mel.f_min = read_double(is, path);
  c.mfcc.mel.f_max = read_double(is, path);
  c.mfcc.mel.log_floor = read_double(is, path);
  c.mfcc.n_ceps = static_cast<int>(read_long(is, path));
  c.mfcc.include_c0 = read_long(is, path) != 0;
  c.use_vad = read_long(is, path) != 0;
  c.vad.offset = read_double(is, path);
  c.vad.frame_length = c.mfcc.mel.stft.frame_length;
  c.vad.hop = c.mfcc.mel.stft.hop;
  c.ubm_components = static_cast<int>(read_long(is, path));
  c.map_relevance = read_double(is, path);
  c.embed_dim = static_cast<int>(read_long(is, path));

  expect_token(is, "ubm", path);
  const long k = read_long(is, path);
  const long d = read_long(is, path);
  check(k >= 1 && d >= 1, "verifier checkpoint has invalid UBM dims: " + path);
  Ubm ubm;
  ubm.gmm.weights = read_vector(is, k, path);
  ubm.gmm.means = read_matrix(is, k, d, path);
  ubm.gmm.variances = read_matrix(is, k, d, path);
  ubm.gmm.prepare();

  expect_token(is, "projection", path);
  const long pd = read_long(is, path);
  const long sv = read_long(is, path);
  check(pd >= 1 && sv >= 1, "verifier checkpoint has invalid projection: " + path);
  Projection proj;
  proj.basis = read_matrix(is, pd, sv, path);
  proj.center = read_vector(is, sv, path);

  BlackBoxVerifier v(c, std::move(ubm), std::move(proj));
  expect_token(is, "enrollments", path);
  const long n_enrolled = read_long(is, path);
  for (long i = 0; i < n_enrolled; ++i) {
    const std::string id = read_token(is, path);
    const long dim = read_long(is, path);
    v.set_enrollment(id, read_vector(is, dim, path));
  }
  return v;
}

namespace {

class VerifierOracle final : public ScoreOracle {
 public:
  VerifierOracle(const BlackBoxVerifier& v, std::string speaker_id)
      : v_(v), speaker_id_(std::move(speaker_id)) {
    check(v.is_enrolled(speaker_id_),
          "cannot build a score oracle for unenrolled speaker " + speaker_id_);
  }

  double score(const Waveform& w) const override {
    return v_.blackbox_score(w, speaker_id_);
  }

 private:
  const BlackBoxVerifier& v_;
  std::string speaker_id_;
};

}  // namespace

std::unique_ptr<ScoreOracle> make_score_oracle(const BlackBoxVerifier& v,
                                               const std::string& speaker_id) {
  return std::make_unique<VerifierOracle>(v, speaker_id);
}

struct ScoreAuditLog::Impl {
  std::ofstream os;
};

ScoreAuditLog::ScoreAuditLog(const std::string& path) : impl_(new Impl) {
  impl_->os.open(path, std::ios::trunc);
  if (!impl_->os) throw Error("cannot open score audit log: " + path);
}

ScoreAuditLog::~ScoreAuditLog() = default;

void ScoreAuditLog::record(const std::string& trial_id,
                           const std::string& speaker_id, double score) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", score);
  impl_->os << trial_id << ' ' << speaker_id << ' ' << buf << '\n';
}

}  // namespace vcfc::asv
