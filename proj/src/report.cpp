#include "classify/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "classify/ingest.hpp"
#include "classify/model.hpp"

namespace classify {

using nlohmann::json;

std::string method_name(Method method) {
  switch (method) {
    case Method::Exact: return "exact";
    case Method::MdpExact: return "mdp-exact";
    case Method::McmcM1: return "mcmc-m1";
    case Method::McmcM2: return "mcmc-m2";
    case Method::Ward: return "ward";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "exact") return Method::Exact;
  if (name == "mdp-exact") return Method::MdpExact;
  if (name == "mcmc-m1" || name == "m1") return Method::McmcM1;
  if (name == "mcmc-m2" || name == "m2") return Method::McmcM2;
  if (name == "ward") return Method::Ward;
  return std::nullopt;
}

std::optional<PlotKind> parse_plot_kind(std::string_view name) {
  if (name == "histogram") return PlotKind::Histogram;
  if (name == "dendrogram") return PlotKind::Dendrogram;
  if (name == "k-bar" || name == "kbar") return PlotKind::KBar;
  return std::nullopt;
}

Report run(const RunConfig& config) {
  const auto start_time = std::chrono::steady_clock::now();

  IngestOptions ingest_options;
  ingest_options.csv_column = config.csv_column;
  ingest_options.scale = config.scale;
  const OrderedDataset ds = ingest(config.data, ingest_options);

  Report report;
  report.config = config;
  report.dataset_label = config.data;
  report.n = ds.size();
  report.data_min = ds.min();
  report.data_max = ds.max();
  report.values = ds.values();

  switch (config.method) {
    case Method::Exact: {
      const ExactPosterior post = exact_posterior(ds, config.hyper, config.composition_cap);
      report.k_table = post.k_marginal;
      report.top_configurations = top_n(post, config.top_count);
      report.log_norm_const = post.log_norm_const;
      report.state_count = post.entries.size();
      break;
    }
    case Method::MdpExact: {
      const MdpPosterior post =
          mdp_exact_posterior(ds, config.hyper, config.partition_cap, config.top_count);
      report.k_table = post.k_marginal;
      report.top_partitions = post.top_partitions;
      report.log_norm_const = post.log_norm_const;
      report.state_count = post.partition_count;
      break;
    }
    case Method::McmcM1:
    case Method::McmcM2: {
      McmcConfig mcmc_config;
      mcmc_config.scheme = config.method == Method::McmcM1 ? Scheme::M1 : Scheme::M2;
      mcmc_config.iterations = config.iterations;
      mcmc_config.burn_in = config.burn_in;
      mcmc_config.seed = config.seed;
      mcmc_config.split_prob = config.split_prob;
      mcmc_config.shuffle_enabled = config.shuffle_enabled;
      const McmcSummary summary = run_chain(ds, config.hyper, mcmc_config);
      report.k_table = summary.k_estimates;
      report.top_configurations = summary.top_frequencies(config.top_count);
      McmcDiagnostics diag;
      diag.split = summary.split;
      diag.merge = summary.merge;
      diag.shuffle = summary.shuffle;
      diag.up = summary.up;
      diag.down = summary.down;
      report.mcmc = diag;
      break;
    }
    case Method::Ward: {
      report.dendrogram = ward_linkage(ds.values());
      report.clusters = cut(*report.dendrogram, config.cut_k);
      report.cluster_sizes = induced_composition(report.clusters);
      break;
    }
  }

  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start_time)
                          .count();
  return report;
}

Comparison run_compare(RunConfig config, const std::vector<Method>& methods) {
  if (methods.empty()) throw std::invalid_argument("no methods selected");
  Comparison comparison;
  comparison.runs.reserve(methods.size());
  for (Method method : methods) {
    config.method = method;
    comparison.runs.push_back(run(config));
  }
  return comparison;
}

namespace {

json config_json(const RunConfig& config) {
  json j;
  j["data"] = config.data;
  if (config.csv_column) j["csv_column"] = *config.csv_column;
  j["scale"] = config.scale;
  j["method"] = method_name(config.method);
  j["theta"] = config.hyper.theta;
  j["a"] = config.hyper.a;
  j["b"] = config.hyper.b;
  j["c"] = config.hyper.c;
  if (config.method == Method::McmcM1 || config.method == Method::McmcM2) {
    j["iterations"] = config.iterations;
    j["burn_in"] = config.burn_in;
    j["seed"] = config.seed;
    j["q"] = config.split_prob;
    if (config.method == Method::McmcM1) j["shuffle"] = config.shuffle_enabled;
  }
  if (config.method == Method::Ward) j["k"] = config.cut_k;
  j["top"] = config.top_count;
  return j;
}

json k_table_json(const std::vector<double>& k_table) {
  json rows = json::array();
  for (std::size_t i = 0; i < k_table.size(); ++i) {
    rows.push_back(json{{"k", i + 1}, {"probability", k_table[i]}});
  }
  return rows;
}

json move_stats_json(const MoveStats& stats) {
  return json{{"proposed", stats.proposed}, {"accepted", stats.accepted}, {"rate", stats.rate()}};
}

// 1-based observation ranks, matching how sorted data is usually discussed
json blocks_json(const SetPartition& partition) {
  json blocks = json::array();
  for (const auto& block : partition.blocks) {
    json indices = json::array();
    for (int idx : block) indices.push_back(idx + 1);
    blocks.push_back(indices);
  }
  return blocks;
}

json report_body_json(const Report& report) {
  json j;
  j["schema_version"] = 1;
  j["method"] = method_name(report.config.method);
  j["config"] = config_json(report.config);
  j["dataset"] = json{{"label", report.dataset_label},
                      {"n", report.n},
                      {"min", report.data_min},
                      {"max", report.data_max},
                      {"values", report.values}};
  if (!report.k_table.empty()) j["k_table"] = k_table_json(report.k_table);
  if (!report.top_configurations.empty()) {
    json top = json::array();
    for (const auto& [comp, prob] : report.top_configurations) {
      top.push_back(json{{"parts", comp.parts()}, {"probability", prob}});
    }
    j["top_configurations"] = top;
  }
  if (!report.top_partitions.empty()) {
    json top = json::array();
    for (const auto& [partition, prob] : report.top_partitions) {
      top.push_back(json{{"blocks", blocks_json(partition)}, {"probability", prob}});
    }
    j["top_partitions"] = top;
  }
  json diagnostics;
  if (report.log_norm_const) diagnostics["log_norm_const"] = *report.log_norm_const;
  if (report.state_count) diagnostics["state_count"] = *report.state_count;
  if (report.mcmc) {
    diagnostics["acceptance"] =
        json{{"split", move_stats_json(report.mcmc->split)},
             {"merge", move_stats_json(report.mcmc->merge)},
             {"shuffle", move_stats_json(report.mcmc->shuffle)},
             {"up", move_stats_json(report.mcmc->up)},
             {"down", move_stats_json(report.mcmc->down)}};
  }
  if (!diagnostics.is_null()) j["diagnostics"] = diagnostics;
  if (report.dendrogram) {
    json merges = json::array();
    for (const auto& merge : report.dendrogram->merges) {
      merges.push_back(json{{"left", merge.left}, {"right", merge.right}, {"cost", merge.cost}});
    }
    json ward;
    ward["merges"] = merges;
    ward["monotone"] = report.dendrogram->monotone;
    ward["k"] = report.config.cut_k;
    json clusters = json::array();
    for (const auto& cluster : report.clusters) {
      json indices = json::array();
      for (int idx : cluster) indices.push_back(idx + 1);
      clusters.push_back(indices);
    }
    ward["clusters"] = clusters;
    if (report.cluster_sizes) ward["composition"] = report.cluster_sizes->parts();
    j["ward"] = ward;
  }
  return j;
}

}  // namespace

std::string to_json(const Report& report) {
  json j = report_body_json(report);
  j["timing"] = json{{"elapsed_ms", report.elapsed_ms}};
  return j.dump(2) + "\n";
}

std::string to_json(const Comparison& comparison) {
  json j;
  j["schema_version"] = 1;
  j["method"] = "compare";
  json runs = json::array();
  std::int64_t total_ms = 0;
  for (const auto& report : comparison.runs) {
    runs.push_back(report_body_json(report));
    total_ms += report.elapsed_ms;
  }
  j["runs"] = runs;
  j["timing"] = json{{"elapsed_ms", total_ms}};
  return j.dump(2) + "\n";
}

namespace {

std::string format_probability(double p) {
  std::ostringstream out;
  if (p != 0.0 && p < 5e-6) {
    out.setf(std::ios::scientific);
    out.precision(2);
  } else {
    out.setf(std::ios::fixed);
    out.precision(5);
  }
  out << p;
  return out.str();
}

std::string parts_string(const Composition& comp) {
  std::string text = "(";
  for (int j = 0; j < comp.k(); ++j) {
    if (j > 0) text += ",";
    text += std::to_string(comp.part(j));
  }
  return text + ")";
}

std::string blocks_string(const SetPartition& partition) {
  std::string text;
  for (const auto& block : partition.blocks) {
    text += "[";
    // contiguous runs print as ranges: [y1..y4]
    const int first = block.front() + 1;
    const int last = block.back() + 1;
    const bool contiguous = last - first + 1 == static_cast<int>(block.size());
    if (contiguous && block.size() > 1) {
      text += "y" + std::to_string(first) + "..y" + std::to_string(last);
    } else {
      for (std::size_t i = 0; i < block.size(); ++i) {
        if (i > 0) text += ",";
        text += "y" + std::to_string(block[i] + 1);
      }
    }
    text += "]";
  }
  return text;
}

}  // namespace

std::string to_csv(const Report& report) {
  std::ostringstream out;
  if (report.config.method == Method::Ward) {
    out << "step,left,right,cost\n";
    const auto& merges = report.dendrogram->merges;
    for (std::size_t t = 0; t < merges.size(); ++t) {
      out << t << "," << merges[t].left << "," << merges[t].right << ","
          << json(merges[t].cost).dump() << "\n";
    }
    return out.str();
  }
  out << "k,probability\n";
  for (std::size_t i = 0; i < report.k_table.size(); ++i) {
    out << (i + 1) << "," << json(report.k_table[i]).dump() << "\n";
  }
  return out.str();
}

std::string to_csv(const Comparison& comparison) {
  std::ostringstream out;
  out << "k";
  int n = 0;
  for (const auto& report : comparison.runs) {
    out << "," << method_name(report.config.method);
    n = std::max(n, report.n);
  }
  out << "\n";
  for (int k = 1; k <= n; ++k) {
    out << k;
    for (const auto& report : comparison.runs) {
      out << ",";
      if (static_cast<std::size_t>(k) <= report.k_table.size()) {
        out << json(report.k_table[k - 1]).dump();
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string to_table(const Report& report) {
  std::ostringstream out;
  out << "method: " << method_name(report.config.method) << "    data: " << report.dataset_label
      << " (n = " << report.n << ", min = " << report.data_min << ", max = " << report.data_max
      << ")\n";
  if (report.config.method != Method::Ward) {
    const auto& h = report.config.hyper;
    out << "theta = " << h.theta << "  a = " << h.a << "  b = " << h.b << "  c = " << h.c;
    if (report.config.scale != 1.0) out << "  scale = " << report.config.scale;
    out << "\n";
  }
  if (report.mcmc) {
    out << "iterations = " << report.config.iterations << "  burn_in = " << report.config.burn_in
        << "  seed = " << report.config.seed << "\n";
  }
  out << "\n";

  if (report.config.method == Method::Ward) {
    out << "ward cut at k = " << report.config.cut_k << ":\n";
    for (const auto& cluster : report.clusters) {
      out << "  [y" << cluster.front() + 1 << "..y" << cluster.back() + 1 << "]  size "
          << cluster.size() << "\n";
    }
    if (report.cluster_sizes) {
      out << "cluster sizes: " << parts_string(*report.cluster_sizes) << "\n";
    }
    out << "\nmerge history (step, clusters, cost):\n";
    const auto& merges = report.dendrogram->merges;
    for (std::size_t t = 0; t < merges.size(); ++t) {
      out << "  " << t << ": " << merges[t].left << " + " << merges[t].right << "  cost "
          << merges[t].cost << "\n";
    }
    return out.str();
  }

  out << "   k  probability\n";
  for (std::size_t i = 0; i < report.k_table.size(); ++i) {
    // stop printing once the tail is identically zero for MCMC estimates
    if (report.mcmc && report.k_table[i] == 0.0) {
      bool rest_zero = true;
      for (std::size_t r = i; r < report.k_table.size(); ++r) rest_zero &= report.k_table[r] == 0.0;
      if (rest_zero) break;
    }
    out << "  " << std::setw(2) << (i + 1) << "  " << format_probability(report.k_table[i])
        << "\n";
  }

  if (!report.top_configurations.empty()) {
    out << "\ntop configurations:\n";
    for (const auto& [comp, prob] : report.top_configurations) {
      out << "  " << parts_string(comp) << "  " << format_probability(prob) << "\n";
    }
  }
  if (!report.top_partitions.empty()) {
    out << "\ntop partitions:\n";
    for (const auto& [partition, prob] : report.top_partitions) {
      out << "  " << blocks_string(partition) << "  " << format_probability(prob) << "\n";
    }
  }
  if (report.mcmc) {
    out << "\nacceptance rates:\n";
    const auto print_rate = [&](const char* name, const MoveStats& stats) {
      if (stats.proposed == 0) return;
      out << "  " << name << ": " << stats.accepted << "/" << stats.proposed << " ("
          << format_probability(stats.rate()) << ")\n";
    };
    print_rate("split", report.mcmc->split);
    print_rate("merge", report.mcmc->merge);
    print_rate("shuffle", report.mcmc->shuffle);
    print_rate("up", report.mcmc->up);
    print_rate("down", report.mcmc->down);
  }
  return out.str();
}

std::string to_table(const Comparison& comparison) {
  std::ostringstream out;
  int n = 0;
  for (const auto& report : comparison.runs) n = std::max(n, report.n);
  out << "   k";
  for (const auto& report : comparison.runs) {
    out << "  " << std::setw(11) << method_name(report.config.method);
  }
  out << "\n";
  for (int k = 1; k <= n; ++k) {
    out << "  " << std::setw(2) << k;
    for (const auto& report : comparison.runs) {
      out << "  " << std::setw(11);
      if (static_cast<std::size_t>(k) <= report.k_table.size()) {
        out << format_probability(report.k_table[k - 1]);
      } else {
        out << "";
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string emit_plot_data(const std::string& report_json, PlotKind kind, int bins) {
  json j;
  try {
    j = json::parse(report_json);
  } catch (const json::parse_error&) {
    throw std::invalid_argument("malformed report JSON");
  }

  std::ostringstream out;
  switch (kind) {
    case PlotKind::Histogram: {
      if (!j.contains("dataset") || !j["dataset"].contains("values")) {
        throw std::invalid_argument("analysis does not provide this plot");
      }
      const auto values = j["dataset"]["values"].get<std::vector<double>>();
      if (values.empty()) throw std::invalid_argument("analysis does not provide this plot");
      const double lo = *std::min_element(values.begin(), values.end());
      const double hi = *std::max_element(values.begin(), values.end());
      if (bins <= 0) {
        bins = 1 + static_cast<int>(std::ceil(std::log2(static_cast<double>(values.size()))));
      }
      const double width = hi > lo ? (hi - lo) / bins : 1.0;
      std::vector<int> counts(bins, 0);
      for (double v : values) {
        int bin = static_cast<int>((v - lo) / width);
        bin = std::clamp(bin, 0, bins - 1);
        ++counts[bin];
      }
      out << "bin_start,bin_end,count\n";
      for (int i = 0; i < bins; ++i) {
        out << json(lo + i * width).dump() << "," << json(lo + (i + 1) * width).dump() << ","
            << counts[i] << "\n";
      }
      return out.str();
    }
    case PlotKind::Dendrogram: {
      if (!j.contains("ward") || !j["ward"].contains("merges")) {
        throw std::invalid_argument("analysis does not provide this plot");
      }
      out << "step,left,right,cost\n";
      const auto& merges = j["ward"]["merges"];
      for (std::size_t t = 0; t < merges.size(); ++t) {
        out << t << "," << merges[t]["left"].get<int>() << "," << merges[t]["right"].get<int>()
            << "," << merges[t]["cost"].dump() << "\n";
      }
      return out.str();
    }
    case PlotKind::KBar: {
      if (!j.contains("k_table")) {
        throw std::invalid_argument("analysis does not provide this plot");
      }
      out << "k,probability\n";
      for (const auto& row : j["k_table"]) {
        out << row["k"].get<int>() << "," << row["probability"].dump() << "\n";
      }
      return out.str();
    }
  }
  throw std::invalid_argument("analysis does not provide this plot");
}

}  // namespace classify
