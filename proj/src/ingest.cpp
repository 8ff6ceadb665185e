#include "classify/ingest.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "classify/datasets.hpp"

namespace classify {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t' || text.front() == '\r')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  return text;
}

double parse_number(std::string_view field, std::size_t line_number) {
  field = trim(field);
  double value = 0.0;
  const auto* begin = field.data();
  const auto* end = field.data() + field.size();
  const auto result = std::from_chars(begin, end, value);
  if (field.empty() || result.ec != std::errc{} || result.ptr != end) {
    throw std::invalid_argument("parse error at line " + std::to_string(line_number));
  }
  return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

std::vector<double> read_plain(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    values.push_back(parse_number(line, line_number));
  }
  return values;
}

std::vector<double> read_csv_column(std::istream& in, const std::string& column) {
  std::vector<double> values;
  std::string line;
  std::size_t line_number = 0;
  std::ptrdiff_t column_index = -1;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (column_index < 0) {  // header row
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (trim(fields[i]) == column) {
          column_index = static_cast<std::ptrdiff_t>(i);
          break;
        }
      }
      if (column_index < 0) throw std::invalid_argument("column not found: " + column);
      continue;
    }
    if (static_cast<std::size_t>(column_index) >= fields.size()) {
      throw std::invalid_argument("parse error at line " + std::to_string(line_number));
    }
    values.push_back(parse_number(fields[column_index], line_number));
  }
  return values;
}

}  // namespace

std::vector<double> read_observations(const std::string& source, const IngestOptions& options) {
  std::vector<double> values;
  if (auto bundled = bundled_dataset(source)) {
    values = std::move(*bundled);
  } else {
    std::ifstream in(source);
    if (!in) throw std::invalid_argument("cannot open input: " + source);
    values = options.csv_column ? read_csv_column(in, *options.csv_column) : read_plain(in);
  }
  if (values.empty()) throw std::invalid_argument("no observations");
  if (options.scale != 1.0) {
    for (double& v : values) v *= options.scale;
  }
  return values;
}

OrderedDataset ingest(const std::string& source, const IngestOptions& options) {
  return prepare_dataset(read_observations(source, options));
}

}  // namespace classify
