// src/harness/experiment.cc

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

#include "vcfc/harness/experiment.hpp"

#include <filesystem>

#include "vcfc/asv/supervector.hpp"
#include "vcfc/dsp/mel.hpp"
#include "vcfc/dsp/resample.hpp"
#include "vcfc/dsp/wav.hpp"

namespace vcfc::harness {

namespace fs = std::filesystem;

dsp::MelConfig mel_config_from(const Config& cfg) {
  dsp::MelConfig mel;
  mel.stft.frame_length = static_cast<int>(cfg.get_int("dsp.frame_length"));
  mel.stft.hop = static_cast<int>(cfg.get_int("dsp.hop"));
  mel.stft.window = dsp::window_from_name(cfg.get_string("dsp.window"));
  mel.n_mels = static_cast<int>(cfg.get_int("dsp.n_mels"));
  mel.f_min = cfg.get_double("dsp.f_min");
  mel.f_max = cfg.get_double("dsp.f_max");
  mel.log_floor = cfg.get_double("dsp.log_floor");
  return mel;
}

dsp::MfccConfig content_mfcc_config_from(const Config& cfg) {
  dsp::MfccConfig mf;
  mf.mel = mel_config_from(cfg);
  mf.mel.n_mels = static_cast<int>(cfg.get_int("ppg.mfcc_mels"));
  mf.n_ceps = static_cast<int>(cfg.get_int("ppg.mfcc_ceps"));
  mf.include_c0 = true;
  return mf;
}

asv::AsvConfig asv_config_from(const Config& cfg) {
  asv::AsvConfig a = asv::default_asv_config();
  a.sample_rate = static_cast<int>(cfg.get_int("asv.sample_rate"));
  a.mfcc.mel.stft.frame_length = static_cast<int>(cfg.get_int("asv.frame_length"));
  a.mfcc.mel.stft.hop = static_cast<int>(cfg.get_int("asv.hop"));
  a.mfcc.mel.n_mels = static_cast<int>(cfg.get_int("asv.n_mels"));
  a.mfcc.n_ceps = static_cast<int>(cfg.get_int("asv.n_ceps"));
  a.vad.frame_length = a.mfcc.mel.stft.frame_length;
  a.vad.hop = a.mfcc.mel.stft.hop;
  a.vad.offset = cfg.get_double("asv.vad_offset");
  a.use_vad = cfg.get_bool("asv.use_vad");
  a.ubm_components = static_cast<int>(cfg.get_int("asv.ubm_components"));
  a.em_iters = static_cast<int>(cfg.get_int("asv.em_iters"));
  a.variance_floor = cfg.get_double("asv.variance_floor");
  a.map_relevance = cfg.get_double("asv.map_relevance");
  a.embed_dim = static_cast<int>(cfg.get_int("asv.embed_dim"));
  return a;
}

feedback::FeedbackConfig feedback_config_from(const Config& cfg) {
  feedback::FeedbackConfig f;
  f.alpha = cfg.get_double("feedback.alpha");
  f.probes = static_cast<int>(cfg.get_int("feedback.probes"));
  f.probe_scale = cfg.get_double("feedback.probe_scale");
  f.score_floor = cfg.get_double("feedback.score_floor");
  f.score_ceiling = cfg.get_double("feedback.score_ceiling");
  const std::string transform = cfg.get_string("feedback.transform");
  if (transform == "one_minus") {
    f.transform = feedback::SvTransform::one_minus;
  } else if (transform == "neg_log") {
    f.transform = feedback::SvTransform::neg_log;
  } else {
    throw Error("unknown feedback.transform: " + transform);
  }
  f.synth_iters = static_cast<int>(cfg.get_int("feedback.synth_iters"));
  return f;
}

vcnet::SynthesisConfig synthesis_config_from(const Config& cfg) {
  vcnet::SynthesisConfig s;
  s.mel = mel_config_from(cfg);
  s.sample_rate = static_cast<int>(cfg.get_int("dsp.sample_rate"));
  s.griffin_lim_iters = static_cast<int>(cfg.get_int("dsp.griffin_lim_iters"));
  s.log_cap = cfg.get_double("dsp.synthesis_log_cap");
  return s;
}

vcnet::OptimizerState optimizer_from(const Config& cfg) {
  vcnet::OptimizerState opt;
  opt.learning_rate = cfg.get_double("vcnet.learning_rate");
  opt.momentum = cfg.get_double("vcnet.momentum");
  opt.minibatch_size = static_cast<int>(cfg.get_int("vcnet.minibatch"));
  return opt;
}

ToyCorpusSpec corpus_spec_from(const Config& cfg) {
  ToyCorpusSpec spec;
  spec.n_targets = static_cast<int>(cfg.get_int("corpus.targets"));
  spec.train_per_target = static_cast<int>(cfg.get_int("corpus.train_per_target"));
  spec.val_per_target = static_cast<int>(cfg.get_int("corpus.val_per_target"));
  spec.n_imposters = static_cast<int>(cfg.get_int("corpus.imposters"));
  spec.utts_per_imposter = static_cast<int>(cfg.get_int("corpus.utts_per_imposter"));
  spec.n_background = static_cast<int>(cfg.get_int("corpus.background"));
  spec.utts_per_background = static_cast<int>(cfg.get_int("corpus.utts_per_background"));
  spec.utt_seconds = cfg.get_double("corpus.utt_seconds");
  spec.utt_seconds_jitter = cfg.get_double("corpus.utt_seconds_jitter");
  spec.sample_rate = static_cast<int>(cfg.get_int("corpus.sample_rate"));
  spec.seed = phase_seed(cfg, SeedStream::corpus);
  return spec;
}

std::uint64_t phase_seed(const Config& cfg, SeedStream stream,
                         std::uint64_t salt) {
  return Rng::derive(cfg.get_seed("run.seed"),
                     (static_cast<std::uint64_t>(stream) << 20) + salt);
}

namespace {

// Pools voiced verifier-side frames from the given manifest rows.
Matrix pool_asv_frames(const std::vector<ManifestRow>& rows,
                       const asv::AsvConfig& acfg,
                       std::vector<Matrix>* per_utt = nullptr) {
  std::vector<Matrix> frames;
  Eigen::Index total = 0;
  for (const ManifestRow& row : rows) {
    const Waveform w = dsp::read_wav(row.path);
    Waveform at_rate = w.sample_rate == acfg.sample_rate
                           ? w
                           : dsp::resample(w, acfg.sample_rate);
    const FeatureSequence feats = dsp::mfcc(at_rate, acfg.mfcc);
    Matrix voiced = feats.frames;
    if (acfg.use_vad) {
      const std::vector<bool> mask = dsp::energy_vad(at_rate, acfg.vad);
      voiced = dsp::select_rows(feats.frames, mask);
    }
    if (voiced.rows() == 0) continue;
    total += voiced.rows();
    frames.push_back(std::move(voiced));
  }
  check(total > 0, "no voiced frames pooled from manifest rows");
  Matrix pool(total, frames.front().cols());
  Eigen::Index at = 0;
  for (const Matrix& f : frames) {
    pool.middleRows(at, f.rows()) = f;
    at += f.rows();
  }
  if (per_utt != nullptr) *per_utt = std::move(frames);
  return pool;
}

}  // namespace

asv::BlackBoxVerifier train_verifier(const Manifest& manifest, const Config& cfg) {
  const asv::AsvConfig acfg = asv_config_from(cfg);
  const std::vector<std::string> background = manifest.background_speakers();
  check(!background.empty(), "manifest has no background speakers for the verifier");

  std::vector<ManifestRow> rows;
  for (const std::string& s : background) {
    for (const ManifestRow& r : manifest.rows_for(s, "train")) rows.push_back(r);
  }

  std::vector<Matrix> per_utt;
  const Matrix pool = pool_asv_frames(rows, acfg, &per_utt);

  GmmFitOptions opts;
  opts.n_iters = acfg.em_iters;
  opts.variance_floor = acfg.variance_floor;
  opts.seed = phase_seed(cfg, SeedStream::ubm);
  const asv::Ubm ubm = asv::train_ubm(pool, acfg.ubm_components, opts);

  Matrix supervectors(static_cast<Eigen::Index>(per_utt.size()),
                      ubm.gmm.components() * ubm.gmm.dim());
  for (std::size_t i = 0; i < per_utt.size(); ++i) {
    supervectors.row(static_cast<Eigen::Index>(i)) =
        asv::supervector(ubm, per_utt[i], acfg.map_relevance).transpose();
  }
  const asv::Projection proj = asv::fit_projection(supervectors, acfg.embed_dim);
  return asv::BlackBoxVerifier(acfg, ubm, proj);
}

void enroll_targets(asv::BlackBoxVerifier& verifier, const Manifest& manifest) {
  const std::vector<std::string> targets = manifest.target_speakers();
  check(!targets.empty(), "manifest has no target speakers to enroll");
  for (const std::string& t : targets) {
    std::vector<Waveform> utts;
    for (const ManifestRow& r : manifest.rows_for(t, "train")) {
      utts.push_back(dsp::read_wav(r.path));
    }
    verifier.enroll(t, utts);
  }
}

ppg::PosteriorModel fit_content_model(const Manifest& manifest, const Config& cfg) {
  const dsp::MfccConfig mfcc_cfg = content_mfcc_config_from(cfg);
  std::vector<std::string> speakers = manifest.background_speakers();
  for (const std::string& t : manifest.target_speakers()) speakers.push_back(t);
  check(!speakers.empty(), "manifest has no train rows for the content model");

  std::vector<Matrix> frames;
  Eigen::Index total = 0;
  for (const std::string& s : speakers) {
    for (const ManifestRow& r : manifest.rows_for(s, "train")) {
      const Waveform w = dsp::read_wav(r.path);
      FeatureSequence f = dsp::mfcc(w, mfcc_cfg);
      total += f.num_frames();
      frames.push_back(std::move(f.frames));
    }
  }
  check(total > 0, "no frames for the content model");
  FeatureSequence pool;
  pool.kind = FeatureKind::mfcc;
  pool.frames.resize(total, frames.front().cols());
  Eigen::Index at = 0;
  for (const Matrix& f : frames) {
    pool.frames.middleRows(at, f.rows()) = f;
    at += f.rows();
  }

  ppg::PosteriorModelConfig pcfg;
  pcfg.n_components = static_cast<int>(cfg.get_int("ppg.components"));
  pcfg.em_iters = static_cast<int>(cfg.get_int("ppg.em_iters"));
  pcfg.variance_floor = cfg.get_double("ppg.variance_floor");
  return ppg::fit_posterior_model(pool, pcfg, phase_seed(cfg, SeedStream::ppg));
}

std::vector<vcnet::TrainPair> build_vc_dataset(const Manifest& manifest,
                                               const std::string& speaker,
                                               const std::string& split,
                                               const ppg::PosteriorModel& content,
                                               const Config& cfg) {
  const dsp::MfccConfig mfcc_cfg = content_mfcc_config_from(cfg);
  const dsp::MelConfig mel_cfg = mel_config_from(cfg);
  const int delta_window = static_cast<int>(cfg.get_int("dsp.delta_window"));

  std::vector<vcnet::TrainPair> dataset;
  for (const ManifestRow& r : manifest.rows_for(speaker, split)) {
    const Waveform w = dsp::read_wav(r.path);
    const FeatureSequence mfcc_f = dsp::mfcc(w, mfcc_cfg);
    const FeatureSequence posterior = ppg::extract_ppg(mfcc_f, content);
    const FeatureSequence mel = dsp::log_mel(w, mel_cfg);
    const FeatureSequence target = dsp::delta_features(mel, delta_window);
    vcnet::TrainPair pair;
    pair.utt_id = r.utt_id;
    pair.x = posterior.frames;
    pair.y = target.frames;
    dataset.push_back(std::move(pair));
  }
  check(!dataset.empty(),
        "no rows for speaker " + speaker + " with split " + split);
  return dataset;
}

std::map<std::string, std::string> convert_trial_set(
    const Manifest& manifest, const vcnet::RecurrentConversionNet& net,
    const ppg::PosteriorModel& content, const Config& cfg,
    const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create conversion directory " + out_dir);

  const dsp::MfccConfig mfcc_cfg = content_mfcc_config_from(cfg);
  const vcnet::FeatureSynthesizer synth(synthesis_config_from(cfg));

  std::map<std::string, std::string> converted;
  for (const ManifestRow& r : manifest.rows_with_split("trial")) {
    const Waveform source = dsp::read_wav(r.path);
    const Waveform out = vcnet::convert(net, source, content, mfcc_cfg, synth);
    const std::string path = (fs::path(out_dir) / (r.utt_id + ".wav")).string();
    dsp::write_wav(path, out);
    converted[r.utt_id] = path;
  }
  return converted;
}

eval::TrialProtocol build_protocol(
    const Manifest& manifest,
    const std::map<std::string, std::map<std::string, std::string>>* vc_audio,
    const std::map<std::string, std::map<std::string, std::string>>* vcfc_audio) {
  eval::TrialProtocol protocol;
  const std::vector<std::string> targets = manifest.target_speakers();
  check(!targets.empty(), "protocol needs at least one target speaker");

  for (const std::string& t : targets) {
    for (const ManifestRow& r : manifest.rows_for(t, "validation")) {
      protocol.trials.push_back(
          {"genuine:" + t + ":" + r.utt_id, t, r.path, eval::TrialLabel::genuine});
    }
  }
  const std::vector<ManifestRow> trial_rows = manifest.rows_with_split("trial");
  for (const std::string& t : targets) {
    for (const ManifestRow& r : trial_rows) {
      protocol.trials.push_back({"imposter:" + t + ":" + r.utt_id, t, r.path,
                                 eval::TrialLabel::imposter});
    }
  }
  auto add_spoofs = [&](const std::map<std::string, std::map<std::string, std::string>>& audio,
                        eval::TrialLabel label, const char* tag) {
    for (const std::string& t : targets) {
      const auto it = audio.find(t);
      if (it == audio.end()) continue;
      for (const auto& [utt_id, path] : it->second) {
        protocol.trials.push_back(
            {std::string(tag) + ":" + t + ":" + utt_id, t, path, label});
      }
    }
  };
  if (vc_audio != nullptr) add_spoofs(*vc_audio, eval::TrialLabel::spoof_vc, "spoof-vc");
  if (vcfc_audio != nullptr) {
    add_spoofs(*vcfc_audio, eval::TrialLabel::spoof_vcfc, "spoof-vcfc");
  }
  return protocol;
}

eval::AudioResolver wav_resolver() {
  return [](const std::string& ref) { return dsp::read_wav(ref); };
}

AttackExperimentResult run_attack_experiment(const Config& cfg,
                                             const std::string& work_dir) {
  std::error_code ec;
  fs::create_directories(work_dir, ec);
  if (ec) throw Error("cannot create experiment directory " + work_dir);

  const Manifest manifest =
      generate_toy_corpus(corpus_spec_from(cfg), (fs::path(work_dir) / "corpus").string());

  asv::BlackBoxVerifier verifier = train_verifier(manifest, cfg);
  enroll_targets(verifier, manifest);
  const ppg::PosteriorModel content = fit_content_model(manifest, cfg);

  const feedback::FeedbackConfig fcfg = feedback_config_from(cfg);
  const vcnet::FeatureSynthesizer synth(synthesis_config_from(cfg));
  const int vc_epochs = static_cast<int>(cfg.get_int("vcnet.epochs"));
  const int fc_epochs = static_cast<int>(cfg.get_int("feedback.epochs"));
  const int hidden = static_cast<int>(cfg.get_int("vcnet.hidden"));
  const int layers = static_cast<int>(cfg.get_int("vcnet.layers"));

  std::map<std::string, std::map<std::string, std::string>> vc_audio, vcfc_audio;
  const std::vector<std::string> targets = manifest.target_speakers();
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const std::string& target = targets[ti];
    const auto dataset = build_vc_dataset(manifest, target, "train", content, cfg);

    vcnet::RecurrentConversionNet net = vcnet::make_net(
        static_cast<int>(cfg.get_int("ppg.components")),
        hidden, 3 * static_cast<int>(cfg.get_int("dsp.n_mels")), layers,
        phase_seed(cfg, SeedStream::net_init, ti));
    vcnet::OptimizerState opt = optimizer_from(cfg);
    vcnet::train_vc(net, dataset, opt, vc_epochs,
                    phase_seed(cfg, SeedStream::vc_train, ti));

    // Two identically seeded continuations from the shared pretrained state:
    // alpha = 0 (plain) and the configured alpha (feedback-controlled).
    const auto oracle = asv::make_score_oracle(verifier, target);
    feedback::FeedbackEnv env;
    env.synthesizer = &synth;
    env.oracle = oracle.get();

    vcnet::RecurrentConversionNet net_vc = net;
    {
      feedback::FeedbackConfig plain = fcfg;
      plain.alpha = 0.0;
      vcnet::OptimizerState opt_vc = opt;
      feedback::train_feedback_vc(net_vc, dataset, env, opt_vc, plain, fc_epochs,
                                  phase_seed(cfg, SeedStream::fc_train, ti));
    }
    vcnet::RecurrentConversionNet net_fc = net;
    {
      vcnet::OptimizerState opt_fc = opt;
      feedback::train_feedback_vc(net_fc, dataset, env, opt_fc, fcfg, fc_epochs,
                                  phase_seed(cfg, SeedStream::fc_train, ti));
    }

    vc_audio[target] = convert_trial_set(
        manifest, net_vc, content, cfg,
        (fs::path(work_dir) / "converted-vc" / target).string());
    vcfc_audio[target] = convert_trial_set(
        manifest, net_fc, content, cfg,
        (fs::path(work_dir) / "converted-vcfc" / target).string());
  }

  const eval::TrialProtocol protocol =
      build_protocol(manifest, &vc_audio, &vcfc_audio);

  AttackExperimentResult result;
  result.scores = eval::run_trials(protocol, verifier, wav_resolver());
  result.scores.metadata["config_hash"] = cfg.hash();
  result.scores.metadata["seed"] = std::to_string(cfg.get_int("run.seed"));

  std::map<std::string, std::string> sex;
  for (const std::string& t : targets) sex[t] = manifest.sex_of(t);
  result.report = eval::attack_report(result.scores, sex);

  const auto genuine = result.scores.scores_with_label(eval::TrialLabel::genuine);
  const auto imposter = result.scores.scores_with_label(eval::TrialLabel::imposter);
  const auto vc = result.scores.scores_with_label(eval::TrialLabel::spoof_vc);
  const auto vcfc = result.scores.scores_with_label(eval::TrialLabel::spoof_vcfc);
  result.eer_imposter = eval::compute_eer(genuine, imposter).eer;
  result.eer_vc = eval::compute_eer(genuine, vc).eer;
  result.eer_vcfc = eval::compute_eer(genuine, vcfc).eer;
  auto mean = [](const std::vector<double>& v) {
    double acc = 0.0;
    for (double s : v) acc += s;
    return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
  };
  result.mean_vc = mean(vc);
  result.mean_vcfc = mean(vcfc);
  return result;
}

}  // namespace vcfc::harness
