// Copyright 2026 AnnealForge contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "annealforge/gp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "annealforge/errors.hpp"

namespace annealforge {

namespace {

constexpr double kLengthScaleMin = 0.03;
constexpr double kLengthScaleMax = 3.0;
constexpr double kSqrt2Pi = 2.5066282746310002;

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / kSqrt2Pi; }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

struct GpSurrogate::Impl {
  int dims;
  double noise_alpha;
  double jitter;

  std::vector<std::vector<double>> points;
  std::vector<double> values;
  std::vector<double> length_scales;

  // factorization state
  bool factored = false;
  double y_mean = 0.0;
  double y_std = 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::VectorXd alpha;  // (K + sigma I)^-1 y_standardized
  double log_ml = 0.0;
  int best_index = 0;

  double kernel(const std::vector<double>& a, const std::vector<double>& b) const {
    double q = 0.0;
    for (int d = 0; d < dims; ++d) {
      const double diff = (a[static_cast<size_t>(d)] - b[static_cast<size_t>(d)]) /
                          length_scales[static_cast<size_t>(d)];
      q += diff * diff;
    }
    return std::exp(-0.5 * q);
  }

  // noise_alpha is in squared target units; the kernel works on
  // standardized targets, so rescale before adding to the diagonal
  double standardized_noise() const {
    return noise_alpha / (y_std * y_std) + jitter;
  }

  Eigen::MatrixXd build_kernel_matrix() const {
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i) {
      k(i, i) = 1.0 + standardized_noise();
      for (int j = i + 1; j < n; ++j) {
        const double v = kernel(points[static_cast<size_t>(i)],
                                points[static_cast<size_t>(j)]);
        k(i, j) = v;
        k(j, i) = v;
      }
    }
    return k;
  }

  // Factors K and computes alpha; returns the log marginal likelihood.
  double factor() {
    const int n = static_cast<int>(points.size());
    y_mean = 0.0;
    for (double v : values) y_mean += v;
    y_mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : values) var += (v - y_mean) * (v - y_mean);
    y_std = n > 1 ? std::sqrt(var / static_cast<double>(n)) : 1.0;
    if (y_std <= 0.0) y_std = 1.0;

    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      y(i) = (values[static_cast<size_t>(i)] - y_mean) / y_std;
    }
    llt.compute(build_kernel_matrix());
    if (llt.info() != Eigen::Success) {
      throw Error("GpSurrogate: kernel factorization failed");
    }
    alpha = llt.solve(y);
    double log_det = 0.0;
    const auto& l = llt.matrixLLT();
    for (int i = 0; i < n; ++i) {
      log_det += std::log(l(i, i));
    }
    log_ml = -0.5 * y.dot(alpha) - log_det -
             0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
    factored = true;
    return log_ml;
  }

  void optimize_length_scales() {
    // coordinate-wise golden-section search on log(l); two passes
    const double lo = std::log(kLengthScaleMin);
    const double hi = std::log(kLengthScaleMax);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    auto objective = [&](int d, double log_l) {
      length_scales[static_cast<size_t>(d)] = std::exp(log_l);
      return factor();
    };
    for (int pass = 0; pass < 2; ++pass) {
      for (int d = 0; d < dims; ++d) {
        double a = lo, b = hi;
        double c = b - gr * (b - a);
        double e = a + gr * (b - a);
        double fc = objective(d, c);
        double fe = objective(d, e);
        for (int it = 0; it < 24; ++it) {
          if (fc >= fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - gr * (b - a);
            fc = objective(d, c);
          } else {
            a = c;
            c = e;
            fc = fe;
            e = a + gr * (b - a);
            fe = objective(d, e);
          }
        }
        objective(d, fc >= fe ? c : e);
      }
    }
  }
};

GpSurrogate::GpSurrogate(int dims, double noise_alpha, double jitter)
    : impl_(std::make_unique<Impl>()) {
  if (dims < 1) {
    throw Error("GpSurrogate: need at least one dimension");
  }
  impl_->dims = dims;
  impl_->noise_alpha = noise_alpha;
  impl_->jitter = jitter;
  impl_->length_scales.assign(static_cast<size_t>(dims), 0.5);
}

GpSurrogate::GpSurrogate(const GpSurrogate& other)
    : impl_(std::make_unique<Impl>(*other.impl_)) {}

GpSurrogate& GpSurrogate::operator=(const GpSurrogate& other) {
  if (this != &other) impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}

GpSurrogate::GpSurrogate(GpSurrogate&&) noexcept = default;
GpSurrogate& GpSurrogate::operator=(GpSurrogate&&) noexcept = default;
GpSurrogate::~GpSurrogate() = default;

void GpSurrogate::add_observation(const std::vector<double>& x, double y) {
  if (static_cast<int>(x.size()) != impl_->dims) {
    throw Error("GpSurrogate: observation dimension mismatch");
  }
  if (!std::isfinite(y)) {
    throw Error("GpSurrogate: non-finite observation value");
  }
  impl_->points.push_back(x);
  impl_->values.push_back(y);
  if (impl_->values.size() == 1 ||
      y > impl_->values[static_cast<size_t>(impl_->best_index)]) {
    impl_->best_index = static_cast<int>(impl_->values.size()) - 1;
  }
  impl_->factored = false;
}

int GpSurrogate::num_observations() const {
  return static_cast<int>(impl_->points.size());
}

int GpSurrogate::dims() const { return impl_->dims; }

void GpSurrogate::fit(bool refit_length_scales) {
  if (impl_->points.empty()) {
    throw Error("GpSurrogate: no observations to fit");
  }
  if (refit_length_scales && impl_->points.size() >= 2) {
    impl_->optimize_length_scales();
  } else {
    impl_->factor();
  }
}

GpSurrogate::Posterior GpSurrogate::predict(const std::vector<double>& x) const {
  if (!impl_->factored) {
    throw Error("GpSurrogate: call fit() before predict()");
  }
  const int n = static_cast<int>(impl_->points.size());
  Eigen::VectorXd k(n);
  for (int i = 0; i < n; ++i) {
    k(i) = impl_->kernel(impl_->points[static_cast<size_t>(i)], x);
  }
  const double mean = impl_->y_mean + impl_->y_std * k.dot(impl_->alpha);
  const Eigen::VectorXd v = impl_->llt.solve(k);
  double variance = 1.0 - k.dot(v);
  variance = std::max(variance, 0.0) * impl_->y_std * impl_->y_std;
  return {mean, variance};
}

double GpSurrogate::expected_improvement(const std::vector<double>& x) const {
  const Posterior p = predict(x);
  const double best = best_observed();
  const double sigma = std::sqrt(p.variance);
  if (sigma <= 0.0) {
    return std::max(p.mean - best, 0.0);
  }
  const double z = (p.mean - best) / sigma;
  const double ei = (p.mean - best) * normal_cdf(z) + sigma * normal_pdf(z);
  return std::max(ei, 0.0);
}

double GpSurrogate::best_observed() const {
  if (impl_->values.empty()) {
    throw Error("GpSurrogate: no observations");
  }
  return impl_->values[static_cast<size_t>(impl_->best_index)];
}

const std::vector<double>& GpSurrogate::best_observed_point() const {
  if (impl_->points.empty()) {
    throw Error("GpSurrogate: no observations");
  }
  return impl_->points[static_cast<size_t>(impl_->best_index)];
}

const std::vector<double>& GpSurrogate::length_scales() const {
  return impl_->length_scales;
}

double GpSurrogate::log_marginal_likelihood() const {
  if (!impl_->factored) {
    throw Error("GpSurrogate: call fit() first");
  }
  return impl_->log_ml;
}

}  // namespace annealforge
