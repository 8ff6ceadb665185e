#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classify/composition.hpp"
#include "classify/exact.hpp"
#include "classify/hyperparams.hpp"
#include "classify/mcmc.hpp"
#include "classify/set_partition.hpp"
#include "classify/ward.hpp"

namespace classify {

enum class Method { Exact, MdpExact, McmcM1, McmcM2, Ward };

std::string method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

enum class OutputFormat { Table, Json, Csv };

struct RunConfig {
  std::string data;  // file path or bundled dataset name
  std::optional<std::string> csv_column;
  double scale = 1.0;
  Hyperparams hyper;
  Method method = Method::Exact;
  // sampler settings
  std::int64_t iterations = 10000;
  std::int64_t burn_in = 1000;
  std::uint64_t seed = 18;
  double split_prob = 0.5;
  bool shuffle_enabled = true;
  // enumeration caps
  int composition_cap = kDefaultCompositionCap;
  int partition_cap = kDefaultPartitionCap;
  // ward cut level
  int cut_k = 2;
  // how many top configurations to report
  std::size_t top_count = 5;
};

struct McmcDiagnostics {
  MoveStats split, merge, shuffle, up, down;
};

// Everything one analysis produced, ready for serialization.
struct Report {
  RunConfig config;
  std::string dataset_label;
  int n = 0;
  double data_min = 0.0;
  double data_max = 0.0;
  std::vector<double> values;  // scaled, ascending

  std::vector<double> k_table;  // k_table[k-1] = p(k); empty for ward
  std::vector<std::pair<Composition, double>> top_configurations;
  std::vector<std::pair<SetPartition, double>> top_partitions;  // mdp-exact only

  std::optional<McmcDiagnostics> mcmc;
  std::optional<double> log_norm_const;
  std::optional<std::uint64_t> state_count;  // compositions or partitions enumerated

  std::optional<Dendrogram> dendrogram;               // ward only
  std::vector<std::vector<int>> clusters;             // ward cut, ascending index sets
  std::optional<Composition> cluster_sizes;           // when clusters are contiguous

  std::int64_t elapsed_ms = 0;
};

// Runs the configured analysis. Propagates ingest/config errors as
// std::invalid_argument and enumeration-cap errors as InfeasibleError.
Report run(const RunConfig& config);

// Serializations. JSON is deterministic given the config except for the
// isolated "timing" object; parsing it back recovers the k table exactly.
std::string to_json(const Report& report);
std::string to_csv(const Report& report);
std::string to_table(const Report& report);

// Several methods on one dataset, Table-1-style side by side.
struct Comparison {
  std::vector<Report> runs;
};
Comparison run_compare(RunConfig config, const std::vector<Method>& methods);
std::string to_json(const Comparison& comparison);
std::string to_csv(const Comparison& comparison);
std::string to_table(const Comparison& comparison);

enum class PlotKind { Histogram, Dendrogram, KBar };
std::optional<PlotKind> parse_plot_kind(std::string_view name);

// Extracts a plottable CSV series from a serialized JSON report: histogram
// bin edges and counts, the dendrogram merge list, or k vs probability.
// Throws std::invalid_argument("analysis does not provide this plot") when
// the report lacks the required analysis. bins = 0 picks Sturges' rule.
std::string emit_plot_data(const std::string& report_json, PlotKind kind, int bins = 0);

}  // namespace classify
