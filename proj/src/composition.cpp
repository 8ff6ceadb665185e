#include "classify/composition.hpp"

#include <numeric>
#include <stdexcept>

namespace classify {

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("composition must have at least one part");
  for (int p : parts_) {
    if (p < 1) throw std::invalid_argument("composition parts must be >= 1");
  }
  total_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Composition Composition::single_group(int n) { return Composition(std::vector<int>{n}); }

Composition Composition::singletons(int n) { return Composition(std::vector<int>(n, 1)); }

Composition composition_from_mask(std::uint64_t mask, int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("mask encoding requires 1 <= n <= 64");
  std::vector<int> parts;
  int current = 1;
  for (int gap = 0; gap < n - 1; ++gap) {
    if ((mask >> (n - 2 - gap)) & 1u) {
      parts.push_back(current);
      current = 1;
    } else {
      ++current;
    }
  }
  parts.push_back(current);
  return Composition(std::move(parts));
}

std::uint64_t composition_mask(const Composition& comp) {
  const int n = comp.n();
  if (n > 64) throw std::invalid_argument("mask encoding requires 1 <= n <= 64");
  std::uint64_t mask = 0;
  int position = 0;
  for (int j = 0; j + 1 < comp.k(); ++j) {
    position += comp.part(j);
    // boundary after 0-based position-1, i.e. gap index position-1
    mask |= std::uint64_t{1} << (n - 1 - position);
  }
  return mask;
}

}  // namespace classify
