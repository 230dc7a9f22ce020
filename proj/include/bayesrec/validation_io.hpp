#pragma once

// Validation data files.
//
//   hypothesis,outcome
//   H1,7.25
//   H2,-11.0
//
// UTF-8, comma separated, header required. `outcome` is either a decimal
// log-LR (numeric mode) or one of identified / not_identified
// (categorical mode); a file may not mix the two.

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bayesrec/recipient.hpp"

namespace bayesrec {

class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::optional<double> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

inline std::optional<ConclusionLabel> parse_label(std::string_view text) {
  if (text == "identified") return ConclusionLabel::identified;
  if (text == "not_identified") return ConclusionLabel::not_identified;
  return std::nullopt;
}

}  // namespace detail

inline std::vector<ValidationRecord> read_validation_csv(std::istream& in) {
  std::vector<ValidationRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::optional<bool> numeric_mode;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      // Tolerate a UTF-8 byte order mark.
      if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
      if (line != "hypothesis,outcome") throw FormatError(line_no, "expected header 'hypothesis,outcome'");
      saw_header = true;
      continue;
    }
    if (line.empty()) {
      // Only trailing blank lines are allowed.
      std::string rest;
      while (std::getline(in, rest)) {
        ++line_no;
        if (!rest.empty() && rest != "\r") throw FormatError(line_no, "data after blank line");
      }
      break;
    }

    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw FormatError(line_no, "expected exactly two fields");
    }
    const std::string_view hyp(line.data(), comma);
    const std::string_view outcome(line.data() + comma + 1, line.size() - comma - 1);

    ValidationRecord rec{Hypothesis::h1, 0.0};
    if (hyp == "H1") {
      rec.hypothesis = Hypothesis::h1;
    } else if (hyp == "H2") {
      rec.hypothesis = Hypothesis::h2;
    } else {
      throw FormatError(line_no, "unknown hypothesis '" + std::string(hyp) + "'");
    }

    if (auto v = detail::parse_decimal(outcome)) {
      rec.outcome = *v;
    } else if (auto label = detail::parse_label(outcome)) {
      rec.outcome = *label;
    } else {
      throw FormatError(line_no, "outcome '" + std::string(outcome) + "' is neither a number nor a known label");
    }

    const bool is_numeric = std::holds_alternative<double>(rec.outcome);
    if (numeric_mode && *numeric_mode != is_numeric) {
      throw FormatError(line_no, "numeric and categorical outcomes are mixed");
    }
    numeric_mode = is_numeric;
    records.push_back(rec);
  }
  if (!saw_header) throw FormatError(line_no + 1, "missing header");
  return records;
}

inline std::vector<ValidationRecord> read_validation_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_validation_csv(in);
}

inline std::vector<ValidationRecord> read_validation_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open validation file '" + path + "'");
  return read_validation_csv(in);
}

}  // namespace bayesrec
