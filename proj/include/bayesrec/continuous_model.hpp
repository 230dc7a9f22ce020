#pragma once

// Recipient uncertainty about the distribution of an expert's reported
// log likelihood ratio under one hypothesis.
//
// The expert's log-LR y is modelled as Normal(mu, 1/tau) with a
// Normal-Gamma prior on (mu, tau):
//
//   mu | tau ~ Normal(mu0, precision n_mu * tau)
//   tau      ~ Gamma(shape n_tau / 2, rate n_tau / (2 * tau0))
//
// so tau0 is the prior point value of the precision and n_mu, n_tau are
// pseudo-observation counts for the mean and the precision.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

#include "bayesrec/numerics.hpp"

namespace bayesrec {

struct NormalGamma {
  double mu0 = 0.0;
  double n_mu = 1.0;
  double tau0 = 1.0;
  double n_tau = 1.0;

  NormalGamma() = default;
  NormalGamma(double mean, double mean_count, double precision, double precision_count)
      : mu0(mean), n_mu(mean_count), tau0(precision), n_tau(precision_count) {
    validate();
  }

  void validate() const {
    if (!std::isfinite(mu0)) throw std::domain_error("NormalGamma: mu0 must be finite");
    if (!(n_mu > 0.0) || !std::isfinite(n_mu)) throw std::domain_error("NormalGamma: n_mu must be positive");
    if (!(tau0 > 0.0) || !std::isfinite(tau0)) throw std::domain_error("NormalGamma: tau0 must be positive");
    if (!(n_tau > 0.0) || !std::isfinite(n_tau)) throw std::domain_error("NormalGamma: n_tau must be positive");
  }

  /// n_tau / tau0: the prior "sum of squares" that the precision update accumulates into.
  double scaled_sum_of_squares() const { return n_tau / tau0; }

  double gamma_shape() const { return 0.5 * n_tau; }
  double gamma_rate() const { return 0.5 * n_tau / tau0; }

  /// The same prior reflected about zero.
  NormalGamma mirrored() const { return NormalGamma(-mu0, n_mu, tau0, n_tau); }

  friend bool operator==(const NormalGamma&, const NormalGamma&) = default;
};

/// The recipient's default prior for log-LR values when H1 is true.
inline NormalGamma default_h1_prior() { return NormalGamma(5.0, 1.0, 0.01, 1.0); }
/// The recipient's default prior for log-LR values when H2 is true.
inline NormalGamma default_h2_prior() { return NormalGamma(-5.0, 1.0, 0.01, 1.0); }

/// Sufficient statistics of n validation log-LRs. `var` uses divisor n, so
/// n * var is the sum of squared deviations from the mean.
struct ValidationSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double var = 0.0;

  ValidationSummary() = default;
  ValidationSummary(std::size_t count, double sample_mean, double sample_var)
      : n(count), mean(sample_mean), var(sample_var) {
    validate();
  }

  void validate() const {
    if (n == 0) return;
    if (!std::isfinite(mean)) throw std::domain_error("ValidationSummary: mean must be finite");
    if (!(var >= 0.0) || !std::isfinite(var)) throw std::domain_error("ValidationSummary: var must be finite and >= 0");
    if (n == 1 && var != 0.0) throw std::domain_error("ValidationSummary: a single observation has zero variance");
  }

  /// Summary of raw values; two-pass so the variance stays accurate.
  static ValidationSummary of(std::span<const double> values) {
    ValidationSummary s;
    s.n = values.size();
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double v : values) {
      if (!std::isfinite(v)) throw std::domain_error("ValidationSummary: non-finite value");
      sum += v;
    }
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.var = s.n == 1 ? 0.0 : ss / static_cast<double>(s.n);
    return s;
  }

  /// Pooled summary of two disjoint samples.
  static ValidationSummary pooled(const ValidationSummary& x, const ValidationSummary& y) {
    if (x.n == 0) return y;
    if (y.n == 0) return x;
    const double nx = static_cast<double>(x.n);
    const double ny = static_cast<double>(y.n);
    const double n = nx + ny;
    const double delta = y.mean - x.mean;
    ValidationSummary s;
    s.n = x.n + y.n;
    s.mean = x.mean + delta * ny / n;
    s.var = (nx * x.var + ny * y.var + delta * delta * nx * ny / n) / n;
    return s;
  }
};

/// Conjugate update of a Normal-Gamma prior with a validation summary.
inline NormalGamma update(const NormalGamma& prior, const ValidationSummary& data) {
  prior.validate();
  data.validate();
  if (data.n == 0) return prior;

  const double n = static_cast<double>(data.n);
  const double total = prior.n_mu + n;
  const double dev = data.mean - prior.mu0;

  NormalGamma post;
  post.mu0 = (prior.n_mu * prior.mu0 + n * data.mean) / total;
  post.n_mu = total;
  post.n_tau = prior.n_tau + n;
  const double scaled_ss = prior.scaled_sum_of_squares() + n * data.var + prior.n_mu * n * dev * dev / total;
  post.tau0 = post.n_tau / scaled_ss;
  return post;
}

/// Posterior-predictive law of the next log-LR.
inline StudentT predictive(const NormalGamma& ng) {
  ng.validate();
  const double scale2 = (ng.n_mu + 1.0) / (ng.n_mu * ng.tau0);
  return StudentT(ng.n_tau, ng.mu0, std::sqrt(scale2));
}

/// ln LR_A for a reported log-LR x given the H1 and H2 predictives.
inline double log_lr_a(double x, const StudentT& h1, const StudentT& h2) {
  return student_t_logpdf(x, h1) - student_t_logpdf(x, h2);
}

}  // namespace bayesrec
