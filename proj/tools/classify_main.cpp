// classify: ordered-composition classification probabilities for 1-d data.
//
// Subcommands run one analysis each (exact, mdp-exact, mcmc, ward), `compare`
// runs several side by side, and `plot` extracts plottable series from a
// saved JSON report. Exit codes: 0 success, 2 usage or input error,
// 3 exact analysis infeasible (use MCMC), 4 internal invariant violation.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "classify/errors.hpp"
#include "classify/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;

struct CommonOptions {
  classify::RunConfig config;
  std::string format = "table";
  std::string output_path;
};

void add_data_options(CLI::App& cmd, CommonOptions& options) {
  cmd.add_option("--data", options.config.data,
                 "input file (one number per line), or bundled dataset: small10, galaxy")
      ->required();
  cmd.add_option("--column", options.config.csv_column,
                 "treat the input as CSV and read this column");
  cmd.add_option("--scale", options.config.scale, "multiply all observations by this factor");
  cmd.add_option("--theta", options.config.hyper.theta, "total-mass parameter (default 1)");
  cmd.add_option("--a", options.config.hyper.a, "precision prior shape (default 1)");
  cmd.add_option("--b", options.config.hyper.b, "precision prior rate (default 1)");
  cmd.add_option("--c", options.config.hyper.c, "mean precision scale (default 0.1)");
  cmd.add_option("--format", options.format, "output format: table, json, csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd.add_option("-o,--output", options.output_path, "write the report to this file");
  cmd.add_option("--top", options.config.top_count, "number of top configurations to report");
}

void add_mcmc_options(CLI::App& cmd, CommonOptions& options) {
  cmd.add_option("--iters", options.config.iterations, "recorded iterations (default 10000)");
  cmd.add_option("--burnin", options.config.burn_in, "burn-in iterations (default 1000)");
  cmd.add_option("--seed", options.config.seed, "random seed (default 18)");
  cmd.add_option("--q", options.config.split_prob, "split proposal probability (default 0.5)");
}

void validate_hyper(const classify::RunConfig& config) {
  // route bad values through the validating constructor
  classify::Hyperparams checked(config.hyper.theta, config.hyper.a, config.hyper.b,
                                config.hyper.c);
  (void)checked;
}

void write_output(const CommonOptions& options, const std::string& text) {
  if (options.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(options.output_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write output: " + options.output_path);
  out << text;
}

void emit_report(const CommonOptions& options, const classify::Report& report) {
  if (options.format == "json") {
    write_output(options, classify::to_json(report));
  } else if (options.format == "csv") {
    write_output(options, classify::to_csv(report));
  } else {
    write_output(options, classify::to_table(report));
  }
}

void emit_comparison(const CommonOptions& options, const classify::Comparison& comparison) {
  if (options.format == "json") {
    write_output(options, classify::to_json(comparison));
  } else if (options.format == "csv") {
    write_output(options, classify::to_csv(comparison));
  } else {
    write_output(options, classify::to_table(comparison));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classification probabilities for ordered one-dimensional data"};
  app.require_subcommand(1);

  CommonOptions exact_options;
  CLI::App* exact_cmd = app.add_subcommand("exact", "exact posterior over all compositions");
  add_data_options(*exact_cmd, exact_options);
  exact_cmd->add_option("--cap", exact_options.config.composition_cap,
                        "largest n accepted for exact enumeration (default 25)");

  CommonOptions mdp_options;
  CLI::App* mdp_cmd =
      app.add_subcommand("mdp-exact", "exact unordered-mixture posterior over set partitions");
  add_data_options(*mdp_cmd, mdp_options);
  mdp_cmd->add_option("--cap", mdp_options.config.partition_cap,
                      "largest n accepted for partition enumeration (default 12)");

  CommonOptions mcmc_options;
  std::string scheme = "m1";
  bool no_shuffle = false;
  CLI::App* mcmc_cmd = app.add_subcommand("mcmc", "split-merge MCMC estimate of the posterior");
  add_data_options(*mcmc_cmd, mcmc_options);
  add_mcmc_options(*mcmc_cmd, mcmc_options);
  mcmc_cmd->add_option("--scheme", scheme, "sampling scheme: m1 or m2 (default m1)")
      ->check(CLI::IsMember({"m1", "m2"}));
  mcmc_cmd->add_flag("--no-shuffle", no_shuffle, "disable the shuffle move (m1 only)");

  CommonOptions ward_options;
  CLI::App* ward_cmd = app.add_subcommand("ward", "Ward minimum-variance clustering baseline");
  add_data_options(*ward_cmd, ward_options);
  ward_cmd->add_option("--k", ward_options.config.cut_k, "number of clusters to cut (default 2)");

  CommonOptions compare_options;
  std::vector<std::string> method_names = {"exact", "mcmc-m1", "mcmc-m2"};
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run several methods and print their k tables side by side");
  add_data_options(*compare_cmd, compare_options);
  add_mcmc_options(*compare_cmd, compare_options);
  compare_cmd->add_option("--methods", method_names,
                          "comma-separated methods: exact, mdp-exact, mcmc-m1, mcmc-m2")
      ->delimiter(',');

  std::string plot_kind_name;
  std::string plot_report_path;
  int plot_bins = 0;
  CLI::App* plot_cmd = app.add_subcommand("plot", "extract plot series from a saved JSON report");
  plot_cmd->add_option("--report", plot_report_path, "JSON report produced with --format json")
      ->required();
  plot_cmd->add_option("--kind", plot_kind_name, "series kind: histogram, dendrogram, k-bar")
      ->required();
  plot_cmd->add_option("--bins", plot_bins, "histogram bin count (default: Sturges' rule)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (exact_cmd->parsed()) {
      exact_options.config.method = classify::Method::Exact;
      validate_hyper(exact_options.config);
      emit_report(exact_options, classify::run(exact_options.config));
    } else if (mdp_cmd->parsed()) {
      mdp_options.config.method = classify::Method::MdpExact;
      validate_hyper(mdp_options.config);
      emit_report(mdp_options, classify::run(mdp_options.config));
    } else if (mcmc_cmd->parsed()) {
      mcmc_options.config.method =
          scheme == "m2" ? classify::Method::McmcM2 : classify::Method::McmcM1;
      mcmc_options.config.shuffle_enabled = !no_shuffle;
      validate_hyper(mcmc_options.config);
      emit_report(mcmc_options, classify::run(mcmc_options.config));
    } else if (ward_cmd->parsed()) {
      ward_options.config.method = classify::Method::Ward;
      emit_report(ward_options, classify::run(ward_options.config));
    } else if (compare_cmd->parsed()) {
      std::vector<classify::Method> methods;
      for (const auto& name : method_names) {
        const auto method = classify::parse_method(name);
        if (!method) throw std::invalid_argument("unknown method: " + name);
        methods.push_back(*method);
      }
      validate_hyper(compare_options.config);
      emit_comparison(compare_options, classify::run_compare(compare_options.config, methods));
    } else if (plot_cmd->parsed()) {
      const auto kind = classify::parse_plot_kind(plot_kind_name);
      if (!kind) throw std::invalid_argument("unknown plot kind: " + plot_kind_name);
      std::ifstream in(plot_report_path, std::ios::binary);
      if (!in) throw std::invalid_argument("cannot open report: " + plot_report_path);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      CommonOptions plot_options;  // stdout only
      write_output(plot_options, classify::emit_plot_data(buffer.str(), *kind, plot_bins));
    }
  } catch (const classify::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const classify::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
