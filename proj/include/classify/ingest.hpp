#pragma once

#include <optional>
#include <string>
#include <vector>

#include "classify/dataset.hpp"

namespace classify {

struct IngestOptions {
  std::optional<std::string> csv_column;  // treat the source as CSV and read this column
  double scale = 1.0;                     // multiply every observation
};

// Reads observations from a bundled dataset name ("small10", "galaxy") or a
// text file: one decimal number per line, or one CSV column when csv_column
// is set. Blank lines are skipped. Throws std::invalid_argument with
// "parse error at line L" (1-based) for malformed content and
// "no observations" for an empty source.
std::vector<double> read_observations(const std::string& source, const IngestOptions& options = {});

// read_observations followed by prepare_dataset.
OrderedDataset ingest(const std::string& source, const IngestOptions& options = {});

}  // namespace classify
