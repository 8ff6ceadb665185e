#include "classify/ward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace classify {

namespace {

struct Cluster {
  int id = 0;
  int size = 0;
  double mean = 0.0;
  bool active = false;
};

double ward_increase(const Cluster& a, const Cluster& b) {
  const double diff = a.mean - b.mean;
  return static_cast<double>(a.size) * b.size / (a.size + b.size) * diff * diff;
}

}  // namespace

Dendrogram ward_linkage(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  if (n == 0) throw std::invalid_argument("empty dataset");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  }

  Dendrogram dendrogram;
  dendrogram.leaf_count = n;
  dendrogram.merges.reserve(n - 1);

  std::vector<Cluster> clusters;
  clusters.reserve(2 * n - 1);
  for (int i = 0; i < n; ++i) clusters.push_back({i, 1, values[i], true});

  std::vector<int> active;
  for (int i = 0; i < n; ++i) active.push_back(i);

  double last_cost = -std::numeric_limits<double>::infinity();
  while (static_cast<int>(active.size()) > 1) {
    // scan every active pair; ties go to the lowest (a, b) index pair
    double best_cost = std::numeric_limits<double>::infinity();
    int best_a = -1, best_b = -1;
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const int a = std::min(active[i], active[j]);
        const int b = std::max(active[i], active[j]);
        const double cost = ward_increase(clusters[a], clusters[b]);
        if (cost < best_cost ||
            (cost == best_cost && (a < best_a || (a == best_a && b < best_b)))) {
          best_cost = cost;
          best_a = a;
          best_b = b;
        }
      }
    }

    Cluster merged;
    merged.id = static_cast<int>(clusters.size());
    merged.size = clusters[best_a].size + clusters[best_b].size;
    merged.mean = (clusters[best_a].size * clusters[best_a].mean +
                   clusters[best_b].size * clusters[best_b].mean) /
                  merged.size;
    merged.active = true;
    clusters[best_a].active = false;
    clusters[best_b].active = false;
    clusters.push_back(merged);

    active.erase(std::remove_if(active.begin(), active.end(),
                                [&](int id) { return id == best_a || id == best_b; }),
                 active.end());
    active.push_back(merged.id);

    dendrogram.merges.push_back({best_a, best_b, best_cost});
    if (best_cost < last_cost) dendrogram.monotone = false;
    last_cost = best_cost;
  }
  return dendrogram;
}

std::vector<std::vector<int>> cut(const Dendrogram& dendrogram, int k) {
  const int n = dendrogram.leaf_count;
  if (k < 1 || k > n) throw std::invalid_argument("cut level k out of range");

  // replay the first n-k merges
  std::vector<std::vector<int>> members(2 * n - 1);
  for (int i = 0; i < n; ++i) members[i] = {i};
  std::vector<bool> alive(2 * n - 1, false);
  for (int i = 0; i < n; ++i) alive[i] = true;
  for (int t = 0; t < n - k; ++t) {
    const auto& merge = dendrogram.merges[t];
    auto& target = members[n + t];
    target = std::move(members[merge.left]);
    target.insert(target.end(), members[merge.right].begin(), members[merge.right].end());
    members[merge.left].clear();
    members[merge.right].clear();
    alive[merge.left] = false;
    alive[merge.right] = false;
    alive[n + t] = true;
  }

  std::vector<std::vector<int>> result;
  result.reserve(k);
  for (int id = 0; id < 2 * n - 1; ++id) {
    if (alive[id] && !members[id].empty()) {
      std::sort(members[id].begin(), members[id].end());
      result.push_back(std::move(members[id]));
    }
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return result;
}

std::optional<Composition> induced_composition(const std::vector<std::vector<int>>& clusters) {
  std::vector<int> sizes;
  sizes.reserve(clusters.size());
  int expected = 0;
  for (const auto& cluster : clusters) {
    if (cluster.empty() || cluster.front() != expected) return std::nullopt;
    for (std::size_t i = 0; i < cluster.size(); ++i) {
      if (cluster[i] != expected + static_cast<int>(i)) return std::nullopt;
    }
    expected += static_cast<int>(cluster.size());
    sizes.push_back(static_cast<int>(cluster.size()));
  }
  if (sizes.empty()) return std::nullopt;
  return Composition(std::move(sizes));
}

}  // namespace classify
