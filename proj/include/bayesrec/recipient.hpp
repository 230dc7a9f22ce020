#pragma once

// The Bayesian recipient: treats the expert's report itself as evidence,
// forms its own likelihood ratio LR_A from validation data and its priors,
// and multiplies its own prior odds by LR_A.
//
// hybrid_posterior_odds() is the contrasting computation in which the
// recipient's prior odds are multiplied by the expert's LR instead.

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "bayesrec/categorical_model.hpp"
#include "bayesrec/continuous_model.hpp"

namespace bayesrec {

enum class Hypothesis { h1, h2 };

inline std::string_view to_string(Hypothesis h) { return h == Hypothesis::h1 ? "H1" : "H2"; }

/// A reported natural-log likelihood ratio.
struct LogLR {
  double value = 0.0;

  explicit LogLR(double v) : value(v) {
    if (!std::isfinite(v)) throw std::domain_error("LogLR: value must be finite");
  }

  static LogLR from_linear(double lr) {
    if (!(lr > 0.0) || !std::isfinite(lr)) throw std::domain_error("LogLR: linear LR must be finite and positive");
    return LogLR(std::log(lr));
  }

  double linear() const { return std::exp(value); }
};

/// What the recipient takes away from the expert's presentation.
using ExpertReport = std::variant<LogLR, ConclusionLabel>;

/// One ground-truth-labelled validation trial.
struct ValidationRecord {
  Hypothesis hypothesis;
  std::variant<double, ConclusionLabel> outcome;
};

/// Per-hypothesis summaries of numeric validation outcomes.
struct ContinuousData {
  ValidationSummary h1;
  ValidationSummary h2;
};

/// Summarized validation data. std::monostate stands for "no records",
/// which is compatible with either report kind.
using ValidationData = std::variant<std::monostate, ContinuousData, CategoricalCounts>;

/// Reduce records to sufficient statistics. Throws std::invalid_argument
/// when numeric and categorical outcomes are mixed.
inline ValidationData summarize_validation(std::span<const ValidationRecord> records) {
  if (records.empty()) return std::monostate{};

  const bool numeric = std::holds_alternative<double>(records.front().outcome);
  for (const auto& r : records) {
    if (std::holds_alternative<double>(r.outcome) != numeric) {
      throw std::invalid_argument("validation records mix numeric and categorical outcomes");
    }
  }

  if (numeric) {
    std::vector<double> h1;
    std::vector<double> h2;
    for (const auto& r : records) {
      (r.hypothesis == Hypothesis::h1 ? h1 : h2).push_back(std::get<double>(r.outcome));
    }
    return ContinuousData{ValidationSummary::of(h1), ValidationSummary::of(h2)};
  }

  CategoricalCounts c;
  for (const auto& r : records) {
    const bool hit = std::get<ConclusionLabel>(r.outcome) == ConclusionLabel::identified;
    if (r.hypothesis == Hypothesis::h1) {
      ++c.n1;
      c.k1 += hit ? 1 : 0;
    } else {
      ++c.n2;
      c.k2 += hit ? 1 : 0;
    }
  }
  return c;
}

/// Recipient priors for numeric reports. The categorical prior is the
/// fixed ordered-uniform prior and needs no parameters.
struct ContinuousPriors {
  NormalGamma h1 = default_h1_prior();
  NormalGamma h2 = default_h2_prior();
};

struct RecipientQuery {
  double prior_odds = 1.0;
  ExpertReport report = LogLR(0.0);
  ContinuousPriors priors;

  void validate() const {
    if (!(prior_odds > 0.0) || !std::isfinite(prior_odds)) {
      throw std::domain_error("RecipientQuery: prior odds must be finite and positive");
    }
    priors.h1.validate();
    priors.h2.validate();
  }
};

/// LR_A for numeric reports: ratio of the posterior predictive densities.
inline double lr_a(const LogLR& report, const ContinuousPriors& priors, const ContinuousData& data) {
  const StudentT h1 = predictive(update(priors.h1, data.h1));
  const StudentT h2 = predictive(update(priors.h2, data.h2));
  return std::exp(log_lr_a(report.value, h1, h2));
}

/// LR_A for the recipient's query. Throws std::invalid_argument when the
/// validation data kind does not match the report kind.
inline double lr_a(const RecipientQuery& query, const ValidationData& data) {
  query.validate();
  return std::visit(
      [&](const auto& report) -> double {
        using Report = std::decay_t<decltype(report)>;
        if constexpr (std::is_same_v<Report, LogLR>) {
          if (std::holds_alternative<CategoricalCounts>(data)) {
            throw std::invalid_argument("numeric report given categorical validation data");
          }
          const auto* cont = std::get_if<ContinuousData>(&data);
          return lr_a(report, query.priors, cont ? *cont : ContinuousData{});
        } else {
          if (std::holds_alternative<ContinuousData>(data)) {
            throw std::invalid_argument("categorical report given numeric validation data");
          }
          const auto* counts = std::get_if<CategoricalCounts>(&data);
          return conclusion_lr(counts ? *counts : CategoricalCounts{}, report);
        }
      },
      query.report);
}

inline double posterior_odds(double prior_odds, double lr) {
  if (!(prior_odds > 0.0) || !(lr > 0.0)) throw std::domain_error("posterior_odds: inputs must be positive");
  return prior_odds * lr;
}

/// Posterior odds from the hybrid rule: the decision maker's prior odds
/// times the expert's likelihood ratio. Not a Bayesian update for the
/// decision maker; kept for side-by-side comparison.
struct HybridOdds {
  static constexpr std::string_view label = "hybrid";
  double value;
};

inline HybridOdds hybrid_posterior_odds(double prior_odds_dm, double lr_expert) {
  if (!(prior_odds_dm > 0.0) || !(lr_expert > 0.0)) {
    throw std::domain_error("hybrid_posterior_odds: inputs must be positive");
  }
  return {prior_odds_dm * lr_expert};
}

/// Everything the lr-a command reports for one query.
struct RecipientResult {
  double lr_a;
  double posterior_odds;
  std::optional<HybridOdds> hybrid;  // only numeric reports carry an expert LR
};

inline RecipientResult evaluate(const RecipientQuery& query, const ValidationData& data) {
  RecipientResult r{};
  r.lr_a = lr_a(query, data);
  r.posterior_odds = posterior_odds(query.prior_odds, r.lr_a);
  if (const auto* report = std::get_if<LogLR>(&query.report)) {
    r.hybrid = hybrid_posterior_odds(query.prior_odds, report->linear());
  }
  return r;
}

}  // namespace bayesrec
