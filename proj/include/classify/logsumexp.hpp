#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace classify {

// Streaming max-shifted accumulator for log(sum_i exp(x_i)). Keeps a running
// maximum and rescales the partial sum whenever a larger term arrives.
class LogSumAccumulator {
 public:
  void add(double log_term) {
    if (std::isinf(log_term) && log_term < 0) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
    ++count_;
  }

  bool empty() const { return count_ == 0; }

  double value() const {
    if (sum_ <= 0.0) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_);
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

inline double log_sum_exp(std::span<const double> log_terms) {
  LogSumAccumulator acc;
  for (double t : log_terms) acc.add(t);
  return acc.value();
}

}  // namespace classify
