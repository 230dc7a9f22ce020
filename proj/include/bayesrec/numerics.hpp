#pragma once

// Special functions, Student-t densities and deterministic adaptive
// quadrature shared by the continuous and categorical recipient models.
//
// Everything here is a pure function of its arguments. Densities are
// evaluated in log space; Beta normalizers go through log_gamma so that
// validation counts in the tens of thousands do not underflow.

#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/log1p.hpp>

namespace bayesrec {

/// Thrown by integrate() when the subdivision budget runs out before the
/// requested tolerance is met. Carries the best estimate reached so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// ln Γ(x) for finite x > 0.
inline double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error("log_gamma: argument must be finite and positive");
  }
  return boost::math::lgamma(x);
}

/// ln B(a, b).
inline double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

namespace detail {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
// Converges quickly for x < (a + 1) / (a + b + 2).
inline double inc_beta_cf(double x, double a, double b) {
  constexpr int kMaxIter = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) return h;
  }
  throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

// lnΓ(z) minus its Stirling approximation (z - 1/2) ln z - z + ln(2π)/2.
inline double stirling_remainder(double z) {
  if (z < 10.0) {
    return log_gamma(z) - ((z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi));
  }
  const double r = 1.0 / z;
  const double r2 = r * r;
  return r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))));
}

// ln[x^a (1-x)^b / B(a, b)].
//
// For large shapes the three terms are each O(a + b) and nearly cancel, so
// the expression is rewritten around the mode x0 = a / (a + b) where the
// first-order terms vanish identically.
inline double log_beta_prefix(double x, double a, double b) {
  if (a < 10.0 || b < 10.0) {
    return a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  }
  const double total = a + b;
  const double x0 = a / total;
  const double y0 = b / total;
  const double d = x - x0;
  const double deviation = a * boost::math::log1pmx(d / x0) + b * boost::math::log1pmx(-d / y0);
  return deviation + 0.5 * std::log(a * b / (2.0 * std::numbers::pi * total)) -
         (stirling_remainder(a) + stirling_remainder(b) - stirling_remainder(total));
}

}  // namespace detail

/// Regularized incomplete Beta function I_x(a, b).
inline double reg_inc_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("reg_inc_beta: shape parameters must be finite and positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("reg_inc_beta: x must lie in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = detail::log_beta_prefix(x, a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * detail::inc_beta_cf(x, a, b) / a;
  }
  return 1.0 - std::exp(log_front) * detail::inc_beta_cf(1.0 - x, b, a) / b;
}

/// ln I_x(a, b); stays finite where I_x(a, b) itself underflows.
inline double log_reg_inc_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("log_reg_inc_beta: shape parameters must be finite and positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("log_reg_inc_beta: x must lie in [0, 1]");
  }
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x == 1.0) return 0.0;

  const double log_front = detail::log_beta_prefix(x, a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return log_front + std::log(detail::inc_beta_cf(x, a, b) / a);
  }
  return std::log1p(-std::exp(log_front) * detail::inc_beta_cf(1.0 - x, b, a) / b);
}

/// Upper tail 1 - I_x(a, b), computed without cancellation for x near 0.
inline double reg_inc_beta_complement(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("reg_inc_beta_complement: x must lie in [0, 1]");
  }
  return reg_inc_beta(1.0 - x, b, a);
}

/// Log density of Beta(a, b) at x in (0, 1).
inline double beta_logpdf(double x, double a, double b) {
  if (x <= 0.0 || x >= 1.0) return -std::numeric_limits<double>::infinity();
  return detail::log_beta_prefix(x, a, b) - std::log(x) - std::log1p(-x);
}

/// Location-scale Student-t law.
class StudentT {
 public:
  StudentT(double df, double loc, double scale) : df_(df), loc_(loc), scale_(scale) {
    if (!(df > 0.0) || !std::isfinite(df)) {
      throw std::domain_error("StudentT: degrees of freedom must be finite and positive");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw std::domain_error("StudentT: scale must be finite and positive");
    }
    if (!std::isfinite(loc)) throw std::domain_error("StudentT: location must be finite");
  }

  double df() const noexcept { return df_; }
  double loc() const noexcept { return loc_; }
  double scale() const noexcept { return scale_; }

  /// The same law reflected about zero.
  StudentT mirrored() const { return StudentT(df_, -loc_, scale_); }

  friend bool operator==(const StudentT&, const StudentT&) = default;

 private:
  double df_;
  double loc_;
  double scale_;
};

inline double student_t_logpdf(double x, const StudentT& t) {
  const double nu = t.df();
  const double z = (x - t.loc()) / t.scale();
  return log_gamma(0.5 * (nu + 1.0)) - log_gamma(0.5 * nu) -
         0.5 * std::log(nu * std::numbers::pi) - std::log(t.scale()) -
         0.5 * (nu + 1.0) * std::log1p(z * z / nu);
}

inline double student_t_pdf(double x, const StudentT& t) { return std::exp(student_t_logpdf(x, t)); }

inline double student_t_cdf(double x, const StudentT& t) {
  const double nu = t.df();
  const double z = (x - t.loc()) / t.scale();
  if (z == 0.0) return 0.5;
  const double z2 = z * z;
  // Two equivalent incomplete-Beta forms; pick the one whose argument
  // stays away from 1.
  if (z2 < nu) {
    const double half = 0.5 * reg_inc_beta(z2 / (nu + z2), 0.5, 0.5 * nu);
    return z > 0.0 ? 0.5 + half : 0.5 - half;
  }
  const double tail = 0.5 * reg_inc_beta(nu / (nu + z2), 0.5 * nu, 0.5);
  return z > 0.0 ? 1.0 - tail : tail;
}

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double estimate;
  double error;
};

template <typename F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto eval = [&](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) throw std::domain_error("integrate: integrand is not finite");
    return y;
  };

  const double fc = eval(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = eval(center - dx) + eval(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

inline constexpr int kDefaultMaxPanels = 20000;

/// Adaptive Gauss-Kronrod (7/15) quadrature by recursive bisection.
///
/// A panel is accepted once its Kronrod-Gauss difference is within the
/// share of `tol` proportional to its width. Panels are processed in a
/// fixed left-to-right order, so the result is bit-identical across runs.
/// Throws ConvergenceError when more than `max_panels` evaluations are
/// needed.
template <typename F>
  requires std::invocable<F&, double>
double integrate(F&& f, double a, double b, double tol, int max_panels = kDefaultMaxPanels) {
  if (!(tol > 0.0)) throw std::domain_error("integrate: tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
    throw std::domain_error("integrate: require finite a <= b");
  }
  if (a == b) return 0.0;

  const double width = b - a;
  std::vector<detail::Panel> pending;
  pending.push_back(detail::gauss_kronrod_15(f, a, b));
  int panels = 1;
  double accepted = 0.0;
  double accepted_error = 0.0;

  while (!pending.empty()) {
    const detail::Panel panel = pending.back();
    pending.pop_back();
    const double budget = tol * (panel.b - panel.a) / width;
    if (panel.error <= budget) {
      accepted += panel.estimate;
      accepted_error += panel.error;
      continue;
    }
    if (panels + 2 > max_panels) {
      double best = accepted + panel.estimate;
      double err = accepted_error + panel.error;
      for (const auto& p : pending) {
        best += p.estimate;
        err += p.error;
      }
      throw ConvergenceError("integrate: subdivision budget exhausted", best, err);
    }
    const double mid = 0.5 * (panel.a + panel.b);
    // Right half goes on the stack first so the left half is refined first.
    pending.push_back(detail::gauss_kronrod_15(f, mid, panel.b));
    pending.push_back(detail::gauss_kronrod_15(f, panel.a, mid));
    panels += 2;
  }
  return accepted;
}

}  // namespace bayesrec
