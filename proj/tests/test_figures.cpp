#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "bayesrec/figures.hpp"

using namespace bayesrec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double cell(const FigureTable& t, std::size_t row, const std::string& col) { return t.rows().at(row)[t.column_index(col)]; }

std::string csv(const FigureTable& t) {
  std::ostringstream os;
  t.write_csv(os);
  return os.str();
}

}  // namespace

TEST_CASE("linear_grid: endpoints and count", "[figures]") {
  const auto xs = linear_grid(-40.0, 40.0, 0.5);
  REQUIRE(xs.size() == 161);
  CHECK(xs.front() == -40.0);
  CHECK(xs.back() == 40.0);
  CHECK(xs[80] == 0.0);
  CHECK(linear_grid(0.0, 1.0, 0.1).size() == 11);
  CHECK(linear_grid(2.0, 2.0, 1.0).size() == 1);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("prior_curve_table: symmetric centre and the LR_A peak", "[figures]") {
  const FigureTable t = prior_curve_table();
  REQUIRE(t.rows().size() == 161);
  CHECK(t.columns() == std::vector<std::string>{"x", "pdf_h1", "pdf_h2", "lr_a"});
  CHECK(cell(t, 80, "x") == 0.0);
  CHECK(cell(t, 80, "pdf_h1") == cell(t, 80, "pdf_h2"));
  CHECK(cell(t, 80, "lr_a") == 1.0);
  CHECK(cell(t, 110, "x") == 15.0);
  CHECK_THAT(cell(t, 110, "lr_a"), WithinAbs(2.0, 1e-12));
}

TEST_CASE("validation_curve_table: n = 0 rows reproduce the prior curve", "[figures]") {
  ValidationCurveOptions opt;
  opt.n_values = {0};
  const FigureTable t3 = validation_curve_table(opt);
  const FigureTable t2 = prior_curve_table();
  REQUIRE(t3.rows().size() == t2.rows().size());
  for (std::size_t i = 0; i < t2.rows().size(); ++i) {
    CHECK(t3.rows()[i][0] == 0.0);
    CHECK(std::vector<double>(t3.rows()[i].begin() + 1, t3.rows()[i].end()) == t2.rows()[i]);
  }
}

TEST_CASE("validation_curve_table: LR_A at x = 8 grows with n toward the normal limit", "[figures]") {
  ValidationCurveOptions opt;
  opt.n_values = {1, 10, 100, 1000, 10000};
  opt.curve.x_min = 8.0;
  opt.curve.x_max = 8.0;
  const FigureTable t = validation_curve_table(opt);
  REQUIRE(t.rows().size() == 5);
  double prev = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    const double lr = cell(t, i, "lr_a");
    CHECK(lr >= prev);
    prev = lr;
  }
  CHECK_THAT(prev, WithinRel(std::exp(420.25 / 50.0), 0.05));
}

TEST_CASE("scenario_summary: single observation has zero variance", "[figures]") {
  CHECK(scenario_summary(1, 8.0, 25.0).var == 0.0);
  CHECK(scenario_summary(2, 8.0, 25.0).var == 25.0);
  CHECK(scenario_summary(0, 8.0, 25.0).n == 0);
}

TEST_CASE("conclusion_heatmap_table: shape and the no-data cell", "[figures]") {
  HeatmapOptions opt;
  opt.n_values = {0, 20, 100};
  opt.log10_column = true;
  const FigureTable t = conclusion_heatmap_table(opt);
  REQUIRE(t.rows().size() == 9);
  CHECK(t.columns() == std::vector<std::string>{"n1", "n2", "lr", "log10_lr"});
  CHECK_THAT(cell(t, 0, "lr"), WithinAbs(2.0, 1e-9));
  CHECK_THAT(cell(t, 4, "log10_lr"), WithinAbs(std::log10(cell(t, 4, "lr")), 1e-15));
  CHECK(cell(t, 5, "n1") == 20.0);
  CHECK(cell(t, 5, "n2") == 100.0);
}

TEST_CASE("FigureTable: CSV layout and arity checks", "[figures]") {
  FigureTable t({"a", "b"});
  t.add_row({1.0, 0.1});
  t.add_row({-2.5, 1e-300});
  CHECK(csv(t) == "a,b\n1,0.1\n-2.5,1e-300\n");
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(t.add_row({1.0, std::nan("")}), std::domain_error);
  CHECK(csv(prior_curve_table()) == csv(prior_curve_table()));
}
