// bayesrec: command-line front end for the Bayesian recipient models.
//
//   bayesrec lr-a --report-loglr 15 --prior-odds 1
//   bayesrec lr-a --conclusion identified --validation data.csv
//   bayesrec fig2 | fig3 | fig4 [--out table.csv]
//   bayesrec coin --model markov --seq HHHHHTTT
//   bayesrec counterexample [--rational]

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "bayesrec/coin.hpp"
#include "bayesrec/figures.hpp"
#include "bayesrec/finite_space.hpp"
#include "bayesrec/recipient.hpp"
#include "bayesrec/validation_io.hpp"

namespace {

using namespace bayesrec;

struct PriorFlags {
  double mu1 = 5.0, nmu1 = 1.0, tau1 = 0.01, ntau1 = 1.0;
  double mu2 = -5.0, nmu2 = 1.0, tau2 = 0.01, ntau2 = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mu1", mu1, "H1 prior mean of the log-LR")->capture_default_str();
    cmd->add_option("--nmu1", nmu1, "H1 pseudo-observations for the mean")->capture_default_str();
    cmd->add_option("--tau1", tau1, "H1 prior precision")->capture_default_str();
    cmd->add_option("--ntau1", ntau1, "H1 pseudo-observations for the precision")->capture_default_str();
    cmd->add_option("--mu2", mu2, "H2 prior mean of the log-LR")->capture_default_str();
    cmd->add_option("--nmu2", nmu2, "H2 pseudo-observations for the mean")->capture_default_str();
    cmd->add_option("--tau2", tau2, "H2 prior precision")->capture_default_str();
    cmd->add_option("--ntau2", ntau2, "H2 pseudo-observations for the precision")->capture_default_str();
  }

  ContinuousPriors priors() const {
    return {NormalGamma(mu1, nmu1, tau1, ntau1), NormalGamma(mu2, nmu2, tau2, ntau2)};
  }
};

struct GridFlags {
  double x_min = -40.0, x_max = 40.0, step = 0.5;

  void attach(CLI::App* cmd) {
    cmd->add_option("--x-min", x_min, "Smallest log-LR on the grid")->capture_default_str();
    cmd->add_option("--x-max", x_max, "Largest log-LR on the grid")->capture_default_str();
    cmd->add_option("--step", step, "Grid spacing")->capture_default_str();
  }
};

// Output goes to a string first so a failure never leaves a partial table.
void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + out_path + "'");
}

std::string table_text(const FigureTable& table) {
  std::ostringstream os;
  table.write_csv(os);
  return os.str();
}

std::string num(double v) { return fmt::format("{:.15g}", v); }

template <typename P>
std::string prob_text(const P& v) {
  if constexpr (std::is_floating_point_v<P>) {
    return num(v);
  } else {
    return v.str();
  }
}

template <typename P>
std::string counterexample_text() {
  const FiniteSpace<P> space = two_fair_tosses<P>();
  std::string s;
  s += "space: two independent tosses of a fair coin, outcomes HH HT TH TT\n";
  s += "A: first toss heads\nB: second toss heads\nC: both tosses agree\n";
  s += "P(A) = " + prob_text(space.prob("A")) + "\n";
  s += "P(B) = " + prob_text(space.prob("B")) + "\n";
  s += "P(A and B) = " + prob_text(space.prob(space.event("A") & space.event("B"))) + "\n";
  s += std::string("A independent of B: ") + (space.independent("A", "B") ? "true" : "false") + "\n";
  s += "P(A|B,C) = " + prob_text(space.cond_prob("A", {"B", "C"})) + "\n";
  s += "P(A|C) = " + prob_text(space.cond_prob("A", {"C"})) + "\n";
  s += std::string("A independent of B given C: ") + (space.cond_independent("A", "B", {"C"}) ? "true" : "false") +
       "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian recipient: LR_A for an expert's reported likelihood ratio or conclusion"};
  app.require_subcommand(1);

  // lr-a
  auto* lr_cmd = app.add_subcommand("lr-a", "LR_A, recipient posterior odds and hybrid posterior odds");
  double prior_odds = 1.0;
  std::optional<double> report_loglr;
  std::optional<double> report_lr;
  std::string conclusion;
  std::string validation_path;
  PriorFlags lr_priors;
  lr_cmd->add_option("--prior-odds", prior_odds, "Recipient prior odds of H1 vs H2")->capture_default_str();
  auto* loglr_opt = lr_cmd->add_option("--report-loglr", report_loglr, "Reported natural-log LR");
  auto* lr_opt = lr_cmd->add_option("--report-lr", report_lr, "Reported LR on the linear scale");
  auto* concl_opt = lr_cmd->add_option("--conclusion", conclusion, "Reported conclusion")
                        ->check(CLI::IsMember({"identified", "not_identified"}));
  loglr_opt->excludes(lr_opt)->excludes(concl_opt);
  lr_opt->excludes(concl_opt);
  lr_cmd->add_option("--validation", validation_path, "Validation CSV (hypothesis,outcome)");
  lr_priors.attach(lr_cmd);

  // fig2
  auto* fig2_cmd = app.add_subcommand("fig2", "Prior predictive densities and LR_A over a log-LR grid");
  PriorFlags fig2_priors;
  GridFlags fig2_grid;
  bool fig2_log10 = false;
  std::string fig2_out;
  fig2_priors.attach(fig2_cmd);
  fig2_grid.attach(fig2_cmd);
  fig2_cmd->add_flag("--log10", fig2_log10, "Append a log10 LR_A column");
  fig2_cmd->add_option("--out", fig2_out, "Output file (default: standard output)");

  // fig3
  auto* fig3_cmd = app.add_subcommand("fig3", "Densities and LR_A after n validation results, per n");
  PriorFlags fig3_priors;
  GridFlags fig3_grid;
  ValidationCurveOptions fig3_opt;
  bool fig3_log10 = false;
  std::string fig3_out;
  fig3_priors.attach(fig3_cmd);
  fig3_grid.attach(fig3_cmd);
  fig3_cmd->add_option("--n-list", fig3_opt.n_values, "Validation sample sizes")->delimiter(',')->capture_default_str();
  fig3_cmd->add_flag("--log10", fig3_log10, "Append a log10 LR_A column");
  fig3_cmd->add_option("--out", fig3_out, "Output file (default: standard output)");

  // fig4
  auto* fig4_cmd = app.add_subcommand("fig4", "Conclusion LR_A over validation sizes (n1, n2)");
  HeatmapOptions fig4_opt;
  std::string fig4_out;
  fig4_cmd->add_option("--n-list", fig4_opt.n_values, "Validation sample sizes")->delimiter(',')->capture_default_str();
  fig4_cmd->add_flag("--log10", fig4_opt.log10_column, "Append a log10 LR column");
  fig4_cmd->add_option("--out", fig4_out, "Output file (default: standard output)");

  // coin
  auto* coin_cmd = app.add_subcommand("coin", "Next-toss probability of heads for one of three coin models");
  std::string coin_model = "beta";
  std::string coin_seq;
  std::string coin_weighting = "equal";
  bool coin_rational = false;
  coin_cmd->add_option("--model", coin_model, "Coin model")
      ->check(CLI::IsMember({"fair", "beta", "markov"}))
      ->capture_default_str();
  coin_cmd->add_option("--seq", coin_seq, "Observed tosses, e.g. HHHHHTTT")->required();
  coin_cmd->add_option("--weighting", coin_weighting, "Markov initial-toss weighting")
      ->check(CLI::IsMember({"equal", "posterior"}))
      ->capture_default_str();
  coin_cmd->add_flag("--rational", coin_rational, "Exact rational arithmetic");

  // counterexample
  auto* ce_cmd = app.add_subcommand("counterexample", "Pairwise independence does not license dropping a condition");
  bool ce_rational = false;
  ce_cmd->add_flag("--rational", ce_rational, "Exact rational arithmetic");

  CLI11_PARSE(app, argc, argv);

  try {
    if (lr_cmd->parsed()) {
      RecipientQuery query;
      query.prior_odds = prior_odds;
      query.priors = lr_priors.priors();
      if (report_loglr) {
        query.report = LogLR(*report_loglr);
      } else if (report_lr) {
        query.report = LogLR::from_linear(*report_lr);
      } else if (!conclusion.empty()) {
        query.report = conclusion == "identified" ? ConclusionLabel::identified : ConclusionLabel::not_identified;
      } else {
        throw std::invalid_argument("one of --report-loglr, --report-lr or --conclusion is required");
      }
      ValidationData data;
      if (!validation_path.empty()) {
        const auto records = read_validation_file(validation_path);
        data = summarize_validation(records);
      }
      const RecipientResult r = evaluate(query, data);
      std::string text = "lr_a," + num(r.lr_a) + "\n";
      text += "posterior_odds," + num(r.posterior_odds) + "\n";
      text += "hybrid_posterior_odds," + (r.hybrid ? num(r.hybrid->value) : std::string("NA")) + "\n";
      emit(text, "");
    } else if (fig2_cmd->parsed()) {
      CurveOptions opt{fig2_grid.x_min, fig2_grid.x_max, fig2_grid.step, fig2_priors.priors(), fig2_log10};
      emit(table_text(prior_curve_table(opt)), fig2_out);
    } else if (fig3_cmd->parsed()) {
      fig3_opt.curve = {fig3_grid.x_min, fig3_grid.x_max, fig3_grid.step, fig3_priors.priors(), fig3_log10};
      emit(table_text(validation_curve_table(fig3_opt)), fig3_out);
    } else if (fig4_cmd->parsed()) {
      emit(table_text(conclusion_heatmap_table(fig4_opt)), fig4_out);
    } else if (coin_cmd->parsed()) {
      const CoinSequence seq = CoinSequence::parse(coin_seq);
      const BranchWeighting w = coin_weighting == "equal" ? BranchWeighting::equal : BranchWeighting::posterior;
      std::string value;
      if (coin_rational) {
        Rational p = coin_model == "fair" ? coin_fair<Rational>(seq)
                     : coin_model == "beta" ? coin_beta<Rational>(seq)
                                            : coin_markov<Rational>(seq, w);
        value = p.str();
      } else {
        double p = coin_model == "fair" ? coin_fair(seq) : coin_model == "beta" ? coin_beta(seq) : coin_markov(seq, w);
        value = num(p);
      }
      emit(value + "\n", "");
    } else if (ce_cmd->parsed()) {
      emit(ce_rational ? counterexample_text<Rational>() : counterexample_text<double>(), "");
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "bayesrec: error: {}\n", e.what());
    return 2;
  }
  return 0;
}
