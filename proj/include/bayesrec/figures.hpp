#pragma once

// Plot-ready tables for the LR_A curves and the conclusion-LR heatmap.
//
// Tables are written as CSV: header first, comma separated, LF line
// endings, numbers in shortest round-trip form, so identical inputs give
// byte-identical output.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bayesrec/categorical_model.hpp"
#include "bayesrec/continuous_model.hpp"
#include "bayesrec/recipient.hpp"

namespace bayesrec {

class FigureTable {
 public:
  explicit FigureTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw std::invalid_argument("FigureTable: needs at least one column");
  }

  void add_row(std::vector<double> row) {
    if (row.size() != columns_.size()) throw std::invalid_argument("FigureTable: row arity does not match header");
    for (double v : row) {
      if (!std::isfinite(v)) throw std::domain_error("FigureTable: non-finite value");
    }
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }

  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (columns_[i] == name) return i;
    }
    throw std::invalid_argument("FigureTable: no column '" + name + "'");
  }

  void write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) out << ',';
      out << columns_[i];
    }
    out << '\n';
    char buf[64];
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        const auto res = std::to_chars(buf, buf + sizeof buf, row[i]);
        out.write(buf, res.ptr - buf);
      }
      out << '\n';
    }
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

/// Evenly spaced grid x_min, x_min + step, ... up to x_max (inclusive
/// within rounding). Throws std::invalid_argument for an empty range.
inline std::vector<double> linear_grid(double x_min, double x_max, double step) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(step)) {
    throw std::invalid_argument("grid bounds and step must be finite");
  }
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (x_min > x_max) throw std::invalid_argument("x-min must not exceed x-max");
  const auto count = static_cast<std::size_t>(std::floor((x_max - x_min) / step + 1e-9)) + 1;
  std::vector<double> xs;
  xs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) xs.push_back(x_min + static_cast<double>(i) * step);
  return xs;
}

struct CurveOptions {
  double x_min = -40.0;
  double x_max = 40.0;
  double step = 0.5;
  ContinuousPriors priors;
  bool log10_column = false;
};

namespace detail {

inline void add_curve_rows(FigureTable& table, const StudentT& h1, const StudentT& h2, const CurveOptions& opt,
                           std::vector<double> prefix) {
  for (double x : linear_grid(opt.x_min, opt.x_max, opt.step)) {
    const double log_lr = log_lr_a(x, h1, h2);
    std::vector<double> row = prefix;
    row.insert(row.end(), {x, student_t_pdf(x, h1), student_t_pdf(x, h2), std::exp(log_lr)});
    if (opt.log10_column) row.push_back(log_lr / std::log(10.0));
    table.add_row(std::move(row));
  }
}

}  // namespace detail

/// Prior predictive densities of the expert's log-LR and the resulting LR_A.
inline FigureTable prior_curve_table(const CurveOptions& opt = {}) {
  std::vector<std::string> cols = {"x", "pdf_h1", "pdf_h2", "lr_a"};
  if (opt.log10_column) cols.emplace_back("log10_lr_a");
  FigureTable table(std::move(cols));
  detail::add_curve_rows(table, predictive(opt.priors.h1), predictive(opt.priors.h2), opt, {});
  return table;
}

struct ValidationCurveOptions {
  CurveOptions curve;
  std::vector<std::uint64_t> n_values = {1, 10, 100, 1000};
  double h1_mean = 8.0;
  double h1_var = 25.0;
  double h2_mean = -12.5;
  double h2_var = 25.0;
};

/// Scenario summary of n validation log-LRs with the given mean and
/// variance. One observation has no spread, so its variance is zero.
inline ValidationSummary scenario_summary(std::uint64_t n, double mean, double var) {
  if (n == 0) return {};
  return ValidationSummary(n, mean, n == 1 ? 0.0 : var);
}

/// Predictive densities and LR_A after updating both priors with n
/// validation results, for each n in turn.
inline FigureTable validation_curve_table(const ValidationCurveOptions& opt = {}) {
  std::vector<std::string> cols = {"n", "x", "pdf_h1", "pdf_h2", "lr_a"};
  if (opt.curve.log10_column) cols.emplace_back("log10_lr_a");
  FigureTable table(std::move(cols));
  for (std::uint64_t n : opt.n_values) {
    const StudentT h1 = predictive(update(opt.curve.priors.h1, scenario_summary(n, opt.h1_mean, opt.h1_var)));
    const StudentT h2 = predictive(update(opt.curve.priors.h2, scenario_summary(n, opt.h2_mean, opt.h2_var)));
    detail::add_curve_rows(table, h1, h2, opt.curve, {static_cast<double>(n)});
  }
  return table;
}

struct HeatmapOptions {
  std::vector<std::uint64_t> n_values = {0, 10, 20, 40, 100, 200, 400, 1000};
  double rate1 = 0.95;
  double rate2 = 0.05;
  bool log10_column = false;
};

/// Conclusion LR_A over (n1, n2), row-major.
inline FigureTable conclusion_heatmap_table(const HeatmapOptions& opt = {}) {
  std::vector<std::string> cols = {"n1", "n2", "lr"};
  if (opt.log10_column) cols.emplace_back("log10_lr");
  FigureTable table(std::move(cols));
  for (const Figure4Cell& cell : figure4_grid(opt.n_values, opt.rate1, opt.rate2)) {
    std::vector<double> row = {static_cast<double>(cell.n1), static_cast<double>(cell.n2), cell.lr};
    if (opt.log10_column) row.push_back(std::log10(cell.lr));
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace bayesrec
