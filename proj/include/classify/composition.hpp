#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace classify {

// An ordered sequence of positive group sizes (n_1, ..., n_k) summing to n.
// This is the entire state of the classification model: group j holds the
// next n_j observations in ascending order.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<int> parts);  // validates parts >= 1

  static Composition single_group(int n);
  static Composition singletons(int n);

  const std::vector<int>& parts() const { return parts_; }
  int part(int j) const { return parts_[j]; }
  int k() const { return static_cast<int>(parts_.size()); }
  int n() const { return total_; }

  friend auto operator<=>(const Composition& a, const Composition& b) {
    return a.parts_ <=> b.parts_;
  }
  friend bool operator==(const Composition& a, const Composition& b) {
    return a.parts_ == b.parts_;
  }

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

// Compositions of n are in bijection with bitmasks over the n-1 gaps between
// consecutive sorted observations: bit (n-2-g) of the mask set means a group
// boundary sits after position g (0-based). Mask order 0, 1, 2, ... is the
// enumeration order used throughout; it requires n <= 64.
Composition composition_from_mask(std::uint64_t mask, int n);
std::uint64_t composition_mask(const Composition& comp);

}  // namespace classify
