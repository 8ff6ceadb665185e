#include "classify/hyperparams.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace classify {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument(std::string("hyperparameter ") + name +
                                " must be finite and > 0");
  }
}

}  // namespace

Hyperparams::Hyperparams(double theta, double a, double b, double c)
    : theta(theta), a(a), b(b), c(c) {
  require_positive(theta, "theta");
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(c, "c");
}

}  // namespace classify
