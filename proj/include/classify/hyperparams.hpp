#pragma once

namespace classify {

// The four positive constants of the classification model: total-mass
// parameter theta of the group-weight prior, Gamma(a, b) prior on each
// group precision, and precision scale c on each group mean.
struct Hyperparams {
  double theta = 1.0;
  double a = 1.0;
  double b = 1.0;
  double c = 0.1;

  Hyperparams() = default;
  Hyperparams(double theta, double a, double b, double c);
};

}  // namespace classify
