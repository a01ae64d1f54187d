// tests/harness_test.cc

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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "vcfc/eval/eer.hpp"
#include "vcfc/harness/config.hpp"
#include "vcfc/harness/experiment.hpp"
#include "vcfc/harness/manifest.hpp"
#include "vcfc/harness/toy_corpus.hpp"

using namespace vcfc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(is)),
                     std::istreambuf_iterator<char>());
}

harness::ToyCorpusSpec small_spec(std::uint64_t seed) {
  harness::ToyCorpusSpec spec;
  spec.n_targets = 2;
  spec.train_per_target = 6;
  spec.val_per_target = 3;
  spec.n_imposters = 2;
  spec.utts_per_imposter = 3;
  spec.n_background = 4;
  spec.utts_per_background = 5;
  spec.utt_seconds = 0.5;
  spec.utt_seconds_jitter = 0.05;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("config: defaults, overrides, canonical hash, unknown keys") {
  harness::Config cfg;
  CHECK(cfg.get_int("vcnet.minibatch") == 5);
  CHECK(cfg.get_double("feedback.alpha") == 0.7);
  CHECK(cfg.get_double("vcnet.momentum") == 0.9);
  CHECK(cfg.get_double("vcnet.learning_rate") == 0.002);
  CHECK(cfg.get_int("ppg.components") == 42);
  CHECK(cfg.get_int("dsp.n_mels") == 80);

  const std::string base_hash = cfg.hash();
  cfg.set("feedback.alpha", "0.70");  // formatting only
  CHECK(cfg.hash() == base_hash);
  cfg.set("feedback.alpha", "0.5");
  CHECK(cfg.hash() != base_hash);

  CHECK_THROWS_AS(cfg.set("nonsense.key", "1"), Error);
  CHECK_THROWS_AS(cfg.apply_line("feedback.alpha 0.7"), Error);  // missing '='
  CHECK_THROWS_AS(cfg.set("vcnet.minibatch", "five"), Error);

  const fs::path path = fs::temp_directory_path() / "vcfc_config_test.txt";
  cfg.save(path.string());
  const harness::Config back = harness::Config::from_file(path.string());
  CHECK(back.hash() == cfg.hash());
  fs::remove(path);
}

TEST_CASE("config lines tolerate comments and blank lines") {
  harness::Config cfg;
  cfg.apply_line("");
  cfg.apply_line("# comment");
  cfg.apply_line("  vcnet.hidden = 64  ");
  CHECK(cfg.get_int("vcnet.hidden") == 64);
}

TEST_CASE("manifest loading validates ids and paths") {
  const fs::path dir = fs::temp_directory_path() / "vcfc_manifest_test";
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "a.wav");
    os << "stub";
  }
  const fs::path mpath = dir / "manifest.tsv";
  {
    std::ofstream os(mpath);
    os << "u1\tspk\tm\t" << (dir / "a.wav").string() << "\ttrain\n";
    os << "u2\tspk\tm\t" << (dir / "a.wav").string() << "\tvalidation\n";
  }
  const harness::Manifest m = harness::load_manifest(mpath.string());
  CHECK(m.rows.size() == 2);
  CHECK(m.target_speakers() == std::vector<std::string>{"spk"});
  CHECK(m.background_speakers().empty());
  CHECK(m.sex_of("spk") == "m");

  {
    std::ofstream os(mpath);
    os << "u1\tspk\tm\t" << (dir / "a.wav").string() << "\ttrain\n";
    os << "u1\tspk\tm\t" << (dir / "a.wav").string() << "\ttrain\n";
  }
  CHECK_THROWS_WITH_AS(harness::load_manifest(mpath.string()),
                       doctest::Contains("duplicate"), Error);
  {
    std::ofstream os(mpath);
    os << "u1\tspk\tm\t" << (dir / "missing.wav").string() << "\ttrain\n";
  }
  CHECK_THROWS_WITH_AS(harness::load_manifest(mpath.string()),
                       doctest::Contains("missing"), Error);
  fs::remove_all(dir);
}

TEST_CASE("toy corpus generation is bit deterministic") {
  const fs::path dir_a = fs::temp_directory_path() / "vcfc_toy_a";
  const fs::path dir_b = fs::temp_directory_path() / "vcfc_toy_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  const auto spec = small_spec(77);
  const harness::Manifest ma = harness::generate_toy_corpus(spec, dir_a.string());
  const harness::Manifest mb = harness::generate_toy_corpus(spec, dir_b.string());
  REQUIRE(ma.rows.size() == mb.rows.size());
  for (std::size_t i = 0; i < ma.rows.size(); ++i) {
    CHECK(ma.rows[i].utt_id == mb.rows[i].utt_id);
    CHECK(slurp(ma.rows[i].path) == slurp(mb.rows[i].path));
  }
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("toy corpus default layout mirrors the trial protocol shape") {
  const fs::path dir = fs::temp_directory_path() / "vcfc_toy_default";
  fs::remove_all(dir);
  harness::ToyCorpusSpec spec;  // defaults
  spec.utt_seconds = 0.3;       // keep generation quick
  spec.utt_seconds_jitter = 0.02;
  const harness::Manifest m = harness::generate_toy_corpus(spec, dir.string());

  const auto targets = m.target_speakers();
  CHECK(targets.size() == 6);
  int male = 0, female = 0;
  for (const auto& t : targets) {
    (m.sex_of(t) == "m" ? male : female) += 1;
    CHECK(m.rows_for(t, "train").size() == 100);
    CHECK(m.rows_for(t, "validation").size() == 20);
  }
  CHECK(male == 3);
  CHECK(female == 3);
  CHECK(m.imposter_speakers().size() == 10);
  CHECK(m.rows_with_split("trial").size() == 100);
  CHECK(m.background_speakers().size() == 8);
  fs::remove_all(dir);
}

TEST_CASE("toy corpus supports a verifier that separates speakers") {
  const fs::path dir = fs::temp_directory_path() / "vcfc_toy_sep";
  fs::remove_all(dir);
  auto spec = small_spec(101);
  spec.n_background = 5;
  spec.utts_per_background = 8;
  const harness::Manifest manifest = harness::generate_toy_corpus(spec, dir.string());

  harness::Config cfg;
  cfg.set("asv.ubm_components", "16");
  cfg.set("asv.embed_dim", "12");
  cfg.set("asv.em_iters", "10");
  cfg.set("run.seed", "3");

  asv::BlackBoxVerifier verifier = harness::train_verifier(manifest, cfg);
  harness::enroll_targets(verifier, manifest);

  const eval::TrialProtocol protocol =
      harness::build_protocol(manifest, nullptr, nullptr);
  const eval::ScoreSet scores =
      eval::run_trials(protocol, verifier, harness::wav_resolver());
  CHECK(scores.rows.size() == protocol.trials.size());

  const auto genuine = scores.scores_with_label(eval::TrialLabel::genuine);
  const auto imposter = scores.scores_with_label(eval::TrialLabel::imposter);
  REQUIRE(genuine.size() == 2 * 3);
  REQUIRE(imposter.size() == 2 * 2 * 3);
  double mg = 0.0, mi = 0.0;
  for (double s : genuine) mg += s;
  for (double s : imposter) mi += s;
  mg /= static_cast<double>(genuine.size());
  mi /= static_cast<double>(imposter.size());
  CHECK(mg > mi);

  // Separation bound measured on this corpus; see the acceptance suite for
  // the recorded baseline.
  CHECK(eval::compute_eer(genuine, imposter).eer < 0.15);
  fs::remove_all(dir);
}

TEST_CASE("empty protocols yield empty score sets") {
  const fs::path dir = fs::temp_directory_path() / "vcfc_toy_empty";
  fs::remove_all(dir);
  auto spec = small_spec(55);
  const harness::Manifest manifest = harness::generate_toy_corpus(spec, dir.string());
  harness::Config cfg;
  cfg.set("asv.ubm_components", "8");
  cfg.set("asv.embed_dim", "6");
  cfg.set("asv.em_iters", "5");
  asv::BlackBoxVerifier verifier = harness::train_verifier(manifest, cfg);
  const eval::ScoreSet scores =
      eval::run_trials({}, verifier, harness::wav_resolver());
  CHECK(scores.rows.empty());
  fs::remove_all(dir);
}

TEST_CASE("run_trials reports unresolvable audio by trial id") {
  const fs::path dir = fs::temp_directory_path() / "vcfc_toy_missing";
  fs::remove_all(dir);
  auto spec = small_spec(56);
  const harness::Manifest manifest = harness::generate_toy_corpus(spec, dir.string());
  harness::Config cfg;
  cfg.set("asv.ubm_components", "8");
  cfg.set("asv.embed_dim", "6");
  cfg.set("asv.em_iters", "5");
  asv::BlackBoxVerifier verifier = harness::train_verifier(manifest, cfg);
  harness::enroll_targets(verifier, manifest);

  eval::TrialProtocol protocol;
  const std::string target = manifest.target_speakers()[0];
  protocol.trials.push_back({"bad:trial:x", target, "/nonexistent.wav",
                             eval::TrialLabel::imposter});
  CHECK_THROWS_WITH_AS(
      eval::run_trials(protocol, verifier, harness::wav_resolver()),
      doctest::Contains("bad:trial:x"), Error);
  fs::remove_all(dir);
}
