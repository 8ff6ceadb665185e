#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace classify {

// The 10-point example data set, already in ascending order.
const std::vector<double>& small10_data();

// The 82 galaxy recession velocities of Roeder (1990), in units of
// 1000 km/s. That scale is the bundled default because the model's fixed
// prior (b = 1, c = 0.1) is calibrated to single-digit data; see README.
const std::vector<double>& galaxy_data();

// Bundled dataset lookup by name ("small10" or "galaxy").
std::optional<std::vector<double>> bundled_dataset(std::string_view name);

}  // namespace classify
