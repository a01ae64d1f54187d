// src/ref/reference.cc

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

#include "vcfc/ref/reference.hpp"

#include <algorithm>
#include <cmath>

namespace vcfc::ref {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<std::complex<double>> naive_dft(const std::vector<double>& frame) {
  const std::size_t n = frame.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * kPi * static_cast<double>(k) *
                         static_cast<double>(t) / static_cast<double>(n);
      acc += frame[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

ComplexMatrix naive_stft(const std::vector<double>& samples, int frame_length,
                         int hop, const Vector& window) {
  check(static_cast<int>(samples.size()) >= frame_length,
        "naive_stft: input too short");
  const std::size_t n_frames =
      (samples.size() - static_cast<std::size_t>(frame_length)) /
          static_cast<std::size_t>(hop) +
      1;
  const int bins = frame_length / 2 + 1;
  ComplexMatrix out(static_cast<Eigen::Index>(n_frames), bins);
  std::vector<double> frame(static_cast<std::size_t>(frame_length));
  for (std::size_t t = 0; t < n_frames; ++t) {
    for (int i = 0; i < frame_length; ++i) {
      frame[static_cast<std::size_t>(i)] =
          samples[t * static_cast<std::size_t>(hop) + static_cast<std::size_t>(i)] *
          window(i);
    }
    const auto spec = naive_dft(frame);
    for (int k = 0; k < bins; ++k) {
      out(static_cast<Eigen::Index>(t), k) = spec[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

Matrix naive_mel_apply(const Matrix& power, const Matrix& fb) {
  Matrix out = Matrix::Zero(power.rows(), fb.rows());
  for (Eigen::Index t = 0; t < power.rows(); ++t) {
    for (Eigen::Index m = 0; m < fb.rows(); ++m) {
      double acc = 0.0;
      for (Eigen::Index k = 0; k < power.cols(); ++k) {
        acc += power(t, k) * fb(m, k);
      }
      out(t, m) = acc;
    }
  }
  return out;
}

Matrix naive_dct2(const Matrix& rows, int n_ceps, bool include_c0) {
  const Eigen::Index m = rows.cols();
  const int first = include_c0 ? 0 : 1;
  Matrix out(rows.rows(), n_ceps);
  for (Eigen::Index t = 0; t < rows.rows(); ++t) {
    for (int r = 0; r < n_ceps; ++r) {
      const int k = first + r;
      double acc = 0.0;
      for (Eigen::Index n = 0; n < m; ++n) {
        acc += rows(t, n) *
               std::cos(kPi * k * (2.0 * static_cast<double>(n) + 1.0) /
                        (2.0 * static_cast<double>(m)));
      }
      const double scale = k == 0 ? std::sqrt(1.0 / static_cast<double>(m))
                                  : std::sqrt(2.0 / static_cast<double>(m));
      out(t, r) = scale * acc;
    }
  }
  return out;
}

double naive_mse(const Matrix& a, const Matrix& b) {
  check(a.rows() == b.rows() && a.cols() == b.cols(), "naive_mse shape mismatch");
  double acc = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      const double d = a(r, c) - b(r, c);
      acc += d * d;
    }
  }
  return acc / static_cast<double>(a.rows() * a.cols());
}

Matrix naive_gmm_posteriors(const Matrix& frames, const Vector& weights,
                            const Matrix& means, const Matrix& variances) {
  const Eigen::Index n = frames.rows();
  const Eigen::Index k = weights.size();
  const Eigen::Index d = frames.cols();
  Matrix out(n, k);
  for (Eigen::Index t = 0; t < n; ++t) {
    std::vector<double> logp(static_cast<std::size_t>(k));
    double best = -1e300;
    for (Eigen::Index c = 0; c < k; ++c) {
      double acc = std::log(weights(c));
      for (Eigen::Index j = 0; j < d; ++j) {
        const double var = variances(c, j);
        const double diff = frames(t, j) - means(c, j);
        acc += -0.5 * (std::log(2.0 * kPi * var) + diff * diff / var);
      }
      logp[static_cast<std::size_t>(c)] = acc;
      best = std::max(best, acc);
    }
    double z = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) {
      z += std::exp(logp[static_cast<std::size_t>(c)] - best);
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      out(t, c) = std::exp(logp[static_cast<std::size_t>(c)] - best) / z;
    }
  }
  return out;
}

double brute_force_eer(std::vector<double> genuine, std::vector<double> imposter) {
  check(!genuine.empty() && !imposter.empty(), "brute_force_eer: empty set");
  std::sort(genuine.begin(), genuine.end());
  std::sort(imposter.begin(), imposter.end());

  std::vector<double> thresholds;
  thresholds.push_back(std::min(genuine.front(), imposter.front()) - 1.0);
  for (double s : genuine) thresholds.push_back(s);
  for (double s : imposter) thresholds.push_back(s);
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  thresholds.push_back(std::max(genuine.back(), imposter.back()) + 1.0);

  const double ng = static_cast<double>(genuine.size());
  const double ni = static_cast<double>(imposter.size());
  auto operating_point = [&](double t, double* far, double* frr) {
    long fa = 0, fr = 0;
    for (double s : imposter) {
      if (s >= t) ++fa;
    }
    for (double s : genuine) {
      if (s < t) ++fr;
    }
    *far = static_cast<double>(fa) / ni;
    *frr = static_cast<double>(fr) / ng;
  };

  double prev_far = 0.0, prev_frr = 0.0;
  operating_point(thresholds.front(), &prev_far, &prev_frr);
  for (std::size_t j = 1; j < thresholds.size(); ++j) {
    double far = 0.0, frr = 0.0;
    operating_point(thresholds[j], &far, &frr);
    const double d = frr - far;
    if (d >= 0.0) {
      if (d == 0.0) return frr;
      const double prev_d = prev_frr - prev_far;  // < 0
      const double s = -prev_d / (d - prev_d);
      return prev_far + s * (far - prev_far);
    }
    prev_far = far;
    prev_frr = frr;
  }
  throw Error("brute_force_eer: no crossing found");
}

Vector power_iteration_top_direction(const Matrix& sym, int iters) {
  check(sym.rows() == sym.cols() && sym.rows() >= 1,
        "power iteration needs a square matrix");
  Vector v = Vector::Ones(sym.rows());
  v.normalize();
  for (int i = 0; i < iters; ++i) {
    v = sym * v;
    const double n = v.norm();
    check(n > 0.0, "power iteration collapsed");
    v /= n;
  }
  return v;
}

}  // namespace vcfc::ref
