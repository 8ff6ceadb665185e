#include "classify/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace classify {

OrderedDataset prepare_dataset(std::vector<double> raw) {
  if (raw.empty()) throw std::invalid_argument("empty dataset");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) {
      throw std::invalid_argument("non-finite observation at index " + std::to_string(i));
    }
  }
  std::stable_sort(raw.begin(), raw.end());

  OrderedDataset ds;
  ds.values_ = std::move(raw);
  const std::size_t n = ds.values_.size();
  ds.prefix_sum_.resize(n + 1, 0.0);
  ds.prefix_sum_sq_.resize(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = ds.values_[i];
    ds.prefix_sum_[i + 1] = ds.prefix_sum_[i] + y;
    ds.prefix_sum_sq_[i + 1] = ds.prefix_sum_sq_[i] + y * y;
  }
  return ds;
}

}  // namespace classify
