#pragma once

#include <functional>
#include <vector>

namespace dlv {

// Gauss-Hermite rule for the weight exp(-s^2).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per n. Nodes ascending, weights sum to sqrt(pi).
const GaussHermiteRule& gauss_hermite(int n);

// Adaptive Gauss-Kronrod integral of f over [a, b] (b < a flips the sign).
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

}  // namespace dlv
