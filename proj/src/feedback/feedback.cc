// src/feedback/feedback.cc

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

#include "vcfc/feedback/feedback.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "vcfc/core/parallel.hpp"

namespace vcfc::feedback {

double normalize_score(double raw, const FeedbackConfig& cfg) {
  check(std::isfinite(raw), "score must be finite");
  const double span = cfg.score_ceiling - cfg.score_floor;
  if (!(span > 0.0)) throw Error("score_floor must be below score_ceiling");
  const double n = (raw - cfg.score_floor) / span;
  return std::clamp(n, 0.0, 1.0);
}

double loss_sv(double normalized, const FeedbackConfig& cfg) {
  check(normalized >= 0.0 && normalized <= 1.0,
        "loss_sv input must lie in [0, 1]");
  switch (cfg.transform) {
    case SvTransform::one_minus:
      return 1.0 - normalized;
    case SvTransform::neg_log:
      return -std::log(std::max(normalized, 1e-6));
  }
  throw Error("unknown sv transform");
}

double combined_loss(double loss_vc, double loss_sv, double alpha) {
  check(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
  return (1.0 - alpha) * loss_vc + alpha * loss_sv;
}

SpsaEstimate estimate_sv_gradient(const FeatureLoss& loss,
                                  const std::vector<Matrix>& features,
                                  int pairs, double sigma, Rng& rng) {
  check(pairs >= 1, "SPSA needs at least one probe pair");
  check(sigma > 0.0, "SPSA probe scale must be positive");
  check(!features.empty(), "SPSA needs at least one feature matrix");

  // All perturbation draws happen up front in pair order so the estimate does
  // not depend on evaluation scheduling.
  std::vector<std::vector<Matrix>> deltas(static_cast<std::size_t>(pairs));
  for (int p = 0; p < pairs; ++p) {
    auto& d = deltas[static_cast<std::size_t>(p)];
    d.reserve(features.size());
    for (const Matrix& f : features) {
      Matrix m(f.rows(), f.cols());
      for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.rademacher();
      d.push_back(std::move(m));
    }
  }

  // 2*pairs independent evaluations: even slots are +sigma, odd are -sigma.
  std::vector<double> values(static_cast<std::size_t>(2 * pairs), 0.0);
  std::vector<char> ok(static_cast<std::size_t>(2 * pairs), 0);
  par::parallel_for(2 * pairs, [&](std::ptrdiff_t slot) {
    const int p = static_cast<int>(slot / 2);
    const double sign = (slot % 2 == 0) ? 1.0 : -1.0;
    std::vector<Matrix> probe;
    probe.reserve(features.size());
    for (std::size_t u = 0; u < features.size(); ++u) {
      probe.push_back(features[u] +
                      sign * sigma * deltas[static_cast<std::size_t>(p)][u]);
    }
    try {
      values[static_cast<std::size_t>(slot)] = loss(probe);
      ok[static_cast<std::size_t>(slot)] = 1;
    } catch (const OracleFailure&) {
      ok[static_cast<std::size_t>(slot)] = 0;
    }
  });

  SpsaEstimate est;
  est.grads.reserve(features.size());
  for (const Matrix& f : features) est.grads.push_back(Matrix::Zero(f.rows(), f.cols()));
  for (int p = 0; p < pairs; ++p) {
    const std::size_t plus = static_cast<std::size_t>(2 * p);
    const std::size_t minus = plus + 1;
    if (!ok[plus] || !ok[minus]) continue;
    const double slope = (values[plus] - values[minus]) / (2.0 * sigma);
    for (std::size_t u = 0; u < features.size(); ++u) {
      est.grads[u] += slope * deltas[static_cast<std::size_t>(p)][u];
    }
    ++est.pairs_used;
  }
  if (est.pairs_used == 0) {
    log_warning("all SPSA probe pairs failed; using a zero verifier gradient");
    est.degraded = true;
    return est;
  }
  for (Matrix& g : est.grads) g /= static_cast<double>(est.pairs_used);
  return est;
}

namespace {

// Mean transformed verifier loss over the minibatch; throws OracleFailure
// when any utterance cannot be scored.
double batch_sv_loss(const std::vector<Matrix>& features,
                     const FeedbackEnv& env, const FeedbackConfig& cfg) {
  double acc = 0.0;
  for (const Matrix& f : features) {
    const Waveform w = env.synthesizer->synthesize(f, cfg.synth_iters);
    acc += loss_sv(normalize_score(env.oracle->score(w), cfg), cfg);
  }
  return acc / static_cast<double>(features.size());
}

}  // namespace

FeedbackStepTrace feedback_train_step(vcnet::RecurrentConversionNet& net,
                                      const std::vector<vcnet::TrainPair>& dataset,
                                      const std::vector<int>& batch,
                                      const FeedbackEnv& env,
                                      vcnet::OptimizerState& opt,
                                      const FeedbackConfig& cfg, Rng& probe_rng) {
  check(cfg.alpha >= 0.0 && cfg.alpha <= 1.0, "alpha must lie in [0, 1]");
  FeedbackStepTrace trace;

  if (cfg.alpha == 0.0) {
    // Plain conversion step, shared code path: bitwise-identical to train_vc
    // and free of oracle or probe randomness.
    const vcnet::TrainingStepReport r =
        vcnet::vc_minibatch_step(net, dataset, batch, opt);
    trace.loss_vc = r.loss_vc;
    trace.combined_loss = r.combined_loss;
    trace.grad_norm = r.grad_norm;
    return trace;
  }

  check(env.synthesizer != nullptr && env.oracle != nullptr,
        "feedback training needs a synthesizer and a score oracle");
  const std::size_t b = batch.size();
  check(b >= 1, "empty minibatch");

  // Forward every utterance, keeping traces for the eventual backward pass.
  std::vector<vcnet::ForwardTrace> traces(b);
  std::vector<Matrix> predicted(b);
  std::vector<double> vc_losses(b, 0.0);
  par::parallel_for(static_cast<std::ptrdiff_t>(b), [&](std::ptrdiff_t i) {
    const auto& pair = dataset[static_cast<std::size_t>(batch[static_cast<std::size_t>(i)])];
    predicted[static_cast<std::size_t>(i)] =
        vcnet::net_forward(net, pair.x, &traces[static_cast<std::size_t>(i)]);
    vc_losses[static_cast<std::size_t>(i)] =
        vcnet::loss_vc(pair.y, predicted[static_cast<std::size_t>(i)]);
  });
  double vc_loss = 0.0;
  for (double l : vc_losses) vc_loss += l;
  vc_loss /= static_cast<double>(b);
  trace.loss_vc = vc_loss;

  // Score the unperturbed synthesis once per utterance for the trace. Oracle
  // failures degrade the step to conversion-only.
  bool oracle_ok = true;
  std::vector<double> scores(b, 0.0);
  {
    std::vector<char> ok(b, 0);
    par::parallel_for(static_cast<std::ptrdiff_t>(b), [&](std::ptrdiff_t i) {
      try {
        const Waveform w = env.synthesizer->synthesize(
            predicted[static_cast<std::size_t>(i)], cfg.synth_iters);
        scores[static_cast<std::size_t>(i)] = env.oracle->score(w);
        ok[static_cast<std::size_t>(i)] = 1;
      } catch (const OracleFailure&) {
        ok[static_cast<std::size_t>(i)] = 0;
      }
    });
    for (char c : ok) oracle_ok = oracle_ok && c != 0;
  }

  SpsaEstimate sv_grad;
  if (oracle_ok) {
    double raw_mean = 0.0, norm_mean = 0.0, sv_mean = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
      const double n = normalize_score(scores[i], cfg);
      raw_mean += scores[i];
      norm_mean += n;
      sv_mean += loss_sv(n, cfg);
    }
    trace.raw_score = raw_mean / static_cast<double>(b);
    trace.normalized_score = norm_mean / static_cast<double>(b);
    trace.loss_sv = sv_mean / static_cast<double>(b);
    trace.combined_loss = combined_loss(vc_loss, *trace.loss_sv, cfg.alpha);

    sv_grad = estimate_sv_gradient(
        [&](const std::vector<Matrix>& feats) {
          return batch_sv_loss(feats, env, cfg);
        },
        predicted, cfg.probes, cfg.probe_scale, probe_rng);
    trace.probe_pairs_used = sv_grad.pairs_used;
    double sv_norm_sq = 0.0;
    for (const Matrix& g : sv_grad.grads) sv_norm_sq += g.squaredNorm();
    trace.sv_grad_norm = std::sqrt(sv_norm_sq);
  } else {
    log_warning("oracle failed on a minibatch; taking a conversion-only step");
    trace.combined_loss = vc_loss;
  }

  // Output-side gradient per utterance, then one backward pass each and a
  // fixed-order combination.
  std::vector<vcnet::NetGradients> grads(b);
  par::parallel_for(static_cast<std::ptrdiff_t>(b), [&](std::ptrdiff_t i) {
    const auto& pair = dataset[static_cast<std::size_t>(batch[static_cast<std::size_t>(i)])];
    Matrix d_out =
        (1.0 / static_cast<double>(b)) *
        vcnet::loss_vc_grad(pair.y, predicted[static_cast<std::size_t>(i)]);
    if (oracle_ok && !sv_grad.degraded) {
      d_out = (1.0 - cfg.alpha) * d_out +
              cfg.alpha * sv_grad.grads[static_cast<std::size_t>(i)];
    }
    grads[static_cast<std::size_t>(i)] =
        vcnet::net_backward(net, traces[static_cast<std::size_t>(i)], d_out);
  });
  vcnet::NetGradients total = std::move(grads[0]);
  for (std::size_t i = 1; i < b; ++i) vcnet::axpy(1.0, grads[i], total);
  trace.grad_norm = vcnet::param_norm(total);

  vcnet::sgd_step(net, total, opt);
  return trace;
}

std::vector<FeedbackStepTrace> train_feedback_vc(
    vcnet::RecurrentConversionNet& net,
    const std::vector<vcnet::TrainPair>& dataset, const FeedbackEnv& env,
    vcnet::OptimizerState& opt, const FeedbackConfig& cfg, int epochs,
    std::uint64_t seed) {
  vcnet::validate_dataset(dataset, net.input_dim, net.output_dim);
  Rng schedule_rng(seed);
  Rng probe_rng(Rng::derive(seed, 0x5053'4153));  // independent probe stream
  const auto schedule = vcnet::make_minibatch_schedule(
      static_cast<int>(dataset.size()), opt.minibatch_size, epochs, schedule_rng);
  std::vector<FeedbackStepTrace> traces;
  traces.reserve(schedule.size());
  long step = 0;
  for (const auto& batch : schedule) {
    FeedbackStepTrace t =
        feedback_train_step(net, dataset, batch, env, opt, cfg, probe_rng);
    t.step_index = step++;
    traces.push_back(t);
  }
  return traces;
}

void write_trace_log(const std::string& path,
                     const std::vector<FeedbackStepTrace>& traces) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw Error("cannot write trace log: " + path);
  os << "step loss_vc loss_sv combined raw_score grad_norm\n";
  char buf[256];
  for (const FeedbackStepTrace& t : traces) {
    std::snprintf(buf, sizeof(buf), "%ld %.9g ", t.step_index, t.loss_vc);
    os << buf;
    if (t.loss_sv) {
      std::snprintf(buf, sizeof(buf), "%.9g ", *t.loss_sv);
    } else {
      std::snprintf(buf, sizeof(buf), "- ");
    }
    os << buf;
    std::snprintf(buf, sizeof(buf), "%.9g ", t.combined_loss);
    os << buf;
    if (t.raw_score) {
      std::snprintf(buf, sizeof(buf), "%.9g ", *t.raw_score);
    } else {
      std::snprintf(buf, sizeof(buf), "- ");
    }
    os << buf;
    std::snprintf(buf, sizeof(buf), "%.9g\n", t.grad_norm);
    os << buf;
  }
  if (!os) throw Error("short write to trace log: " + path);
}

}  // namespace vcfc::feedback
