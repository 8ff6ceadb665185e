#pragma once

#include <vector>

namespace classify {

// Observations sorted ascending, with cached prefix sums of y and y^2 so
// that any contiguous group's sum and sum of squares is O(1).
class OrderedDataset {
 public:
  OrderedDataset() = default;

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  // Sum of values[start .. start+len) and of their squares.
  double sum(int start, int len) const { return prefix_sum_[start + len] - prefix_sum_[start]; }
  double sum_sq(int start, int len) const {
    return prefix_sum_sq_[start + len] - prefix_sum_sq_[start];
  }

 private:
  friend OrderedDataset prepare_dataset(std::vector<double> raw);

  std::vector<double> values_;
  std::vector<double> prefix_sum_;     // prefix_sum_[i] = sum of the first i values
  std::vector<double> prefix_sum_sq_;
};

// Sorts, validates and builds the prefix arrays. Throws std::invalid_argument
// on an empty input ("empty dataset") or a non-finite value
// ("non-finite observation at index i", indices refer to the raw input).
OrderedDataset prepare_dataset(std::vector<double> raw);

}  // namespace classify
