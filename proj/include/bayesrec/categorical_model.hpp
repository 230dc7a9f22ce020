#pragma once

// Recipient uncertainty about an examiner's categorical conclusion.
//
// p = Pr(identified | H1), q = Pr(identified | H2). The prior on (p, q) is
// uniform over the triangle 0 <= q < p <= 1, and validation tallies give
// the posterior
//
//   pi(p, q | D) ∝ p^k1 (1-p)^(n1-k1) q^k2 (1-q)^(n2-k2) 1{p > q}.
//
// The inner p-integral over (q, 1] reduces to an upper incomplete Beta
// tail, leaving one-dimensional quadratures in q.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "bayesrec/numerics.hpp"

namespace bayesrec {

enum class ConclusionLabel { identified, not_identified };

inline std::string_view to_string(ConclusionLabel label) {
  return label == ConclusionLabel::identified ? "identified" : "not_identified";
}

/// Validation tallies: k1 "identified" among n1 H1-true trials, k2 among n2 H2-true trials.
struct CategoricalCounts {
  std::uint64_t k1 = 0;
  std::uint64_t n1 = 0;
  std::uint64_t k2 = 0;
  std::uint64_t n2 = 0;

  CategoricalCounts() = default;
  CategoricalCounts(std::uint64_t k1_, std::uint64_t n1_, std::uint64_t k2_, std::uint64_t n2_)
      : k1(k1_), n1(n1_), k2(k2_), n2(n2_) {
    validate();
  }

  void validate() const {
    if (k1 > n1 || k2 > n2) throw std::domain_error("CategoricalCounts: require k <= n for both hypotheses");
  }

  friend bool operator==(const CategoricalCounts&, const CategoricalCounts&) = default;
};

struct PosteriorMeans {
  double p;
  double q;
};

inline constexpr double kCategoricalTolerance = 1e-10;

namespace detail {

struct BetaShape {
  double a;
  double b;

  double mean() const { return a / (a + b); }
  double sd() const { return std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1.0))); }
};

// Breakpoints that bracket the bulk of both Beta factors, so that the
// adaptive rule never sees a narrow peak from a single coarse panel.
inline std::vector<double> bulk_breakpoints(const BetaShape& x, const BetaShape& y) {
  std::vector<double> pts = {0.0, 1.0};
  for (const BetaShape& s : {x, y}) {
    const double m = s.mean();
    const double sd = s.sd();
    pts.push_back(m);
    for (double k : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
      pts.push_back(m - k * sd);
      pts.push_back(m + k * sd);
    }
  }
  for (int i = 1; i < 16; ++i) pts.push_back(i / 16.0);
  std::erase_if(pts, [](double t) { return !(t >= 0.0 && t <= 1.0); });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// ln ∫_0^1 Beta(q; outer) * Pr_{p ~ inner}(p > q) dq.
inline double log_ordered_mass(const BetaShape& outer, const BetaShape& inner,
                               std::span<const double> breakpoints, double tol) {
  const auto log_integrand = [&](double q) {
    if (q <= 0.0 || q >= 1.0) return -std::numeric_limits<double>::infinity();
    // Pr(p > q) = 1 - I_q(a, b) = I_{1-q}(b, a)
    return beta_logpdf(q, outer.a, outer.b) + log_reg_inc_beta(1.0 - q, inner.b, inner.a);
  };

  double shift = -std::numeric_limits<double>::infinity();
  for (double t : breakpoints) shift = std::max(shift, log_integrand(t));
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    shift = std::max(shift, log_integrand(0.5 * (breakpoints[i] + breakpoints[i + 1])));
  }
  if (!std::isfinite(shift)) throw std::domain_error("categorical posterior: integrand vanishes everywhere");

  const auto scaled = [&](double q) {
    const double v = log_integrand(q) - shift;
    return v < -745.0 ? 0.0 : std::exp(v);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    total += integrate(scaled, breakpoints[i], breakpoints[i + 1], tol);
  }
  return shift + std::log(total);
}

}  // namespace detail

/// Posterior means (E[p | D], E[q | D]) under the ordered-uniform prior.
inline PosteriorMeans posterior_means(const CategoricalCounts& c, double tol = kCategoricalTolerance) {
  c.validate();
  const detail::BetaShape p_shape{static_cast<double>(c.k1) + 1.0, static_cast<double>(c.n1 - c.k1) + 1.0};
  const detail::BetaShape q_shape{static_cast<double>(c.k2) + 1.0, static_cast<double>(c.n2 - c.k2) + 1.0};
  const auto pts = detail::bulk_breakpoints(p_shape, q_shape);

  // Each moment is the unconstrained Beta mean times a ratio of ordered
  // masses: multiplying the kernel by p (or q) shifts a (respectively) by one.
  const double log_z = detail::log_ordered_mass(q_shape, p_shape, pts, tol);
  const double log_zp = detail::log_ordered_mass(q_shape, {p_shape.a + 1.0, p_shape.b}, pts, tol);
  const double log_zq = detail::log_ordered_mass({q_shape.a + 1.0, q_shape.b}, p_shape, pts, tol);

  return {p_shape.mean() * std::exp(log_zp - log_z), q_shape.mean() * std::exp(log_zq - log_z)};
}

/// LR_A for a categorical conclusion: the ratio of the posterior predictive
/// probabilities of `label` under H1 and H2.
inline double conclusion_lr(const CategoricalCounts& c, ConclusionLabel label, double tol = kCategoricalTolerance) {
  const PosteriorMeans m = posterior_means(c, tol);
  if (label == ConclusionLabel::identified) return m.p / m.q;
  return (1.0 - m.p) / (1.0 - m.q);
}

struct Figure4Cell {
  std::uint64_t n1;
  std::uint64_t n2;
  double lr;
};

/// Number of "identified" outcomes when a fraction `rate` of n trials
/// report it; halves round away from zero.
inline std::uint64_t identified_count(double rate, std::uint64_t n) {
  return static_cast<std::uint64_t>(std::round(rate * static_cast<double>(n)));
}

/// LR_A for "identified" over every (n1, n2) pair, row-major in n1.
inline std::vector<Figure4Cell> figure4_grid(std::span<const std::uint64_t> n_values, double rate1 = 0.95,
                                             double rate2 = 0.05) {
  if (!(rate1 >= 0.0 && rate1 <= 1.0) || !(rate2 >= 0.0 && rate2 <= 1.0)) {
    throw std::domain_error("figure4_grid: rates must lie in [0, 1]");
  }
  std::vector<Figure4Cell> cells;
  cells.reserve(n_values.size() * n_values.size());
  for (std::uint64_t n1 : n_values) {
    for (std::uint64_t n2 : n_values) {
      const CategoricalCounts c(identified_count(rate1, n1), n1, identified_count(rate2, n2), n2);
      cells.push_back({n1, n2, conclusion_lr(c, ConclusionLabel::identified)});
    }
  }
  return cells;
}

}  // namespace bayesrec
