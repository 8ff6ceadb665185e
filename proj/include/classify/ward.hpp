#pragma once

#include <optional>
#include <vector>

#include "classify/composition.hpp"

namespace classify {

// Agglomerative merge history. Leaves are clusters 0..n-1 in input order;
// the merge recorded at position t creates cluster n+t. cost is the increase
// in total within-cluster sum of squares caused by the merge.
struct Dendrogram {
  struct Merge {
    int left = 0;
    int right = 0;
    double cost = 0.0;
  };

  std::vector<Merge> merges;  // exactly leaf_count - 1 entries
  int leaf_count = 0;
  bool monotone = true;  // costs non-decreasing; violations are reported, not hidden
};

// Ward's minimum-variance clustering of one-dimensional data: each step
// merges the pair of clusters with the smallest increase
// size_a*size_b/(size_a+size_b) * (mean_a - mean_b)^2 in within-cluster sum
// of squares. Ties break toward the lowest cluster index pair. Throws
// std::invalid_argument("empty dataset") on empty input.
Dendrogram ward_linkage(const std::vector<double>& values);

// The k clusters obtained by undoing the last k-1 merges, as index sets
// sorted ascending, ordered by smallest member. Throws std::invalid_argument
// on k outside 1..n.
std::vector<std::vector<int>> cut(const Dendrogram& dendrogram, int k);

// Group sizes in order when every cluster is a contiguous index range (true
// for 1-d sorted inputs in practice, not guaranteed); nullopt otherwise.
std::optional<Composition> induced_composition(const std::vector<std::vector<int>>& clusters);

}  // namespace classify
