#include "dlv/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/hermite.hpp>

namespace dlv {

namespace {

GaussHermiteRule build_rule(int n) {
  GaussHermiteRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double pi = std::acos(-1.0);
  // log of 2^{n-1} n! sqrt(pi) / n^2
  const double logc = (n - 1) * std::log(2.0) + std::lgamma(n + 1.0) + 0.5 * std::log(pi) - 2.0 * std::log(n);
  int half = n / 2;
  std::vector<double> desc;  // positive roots, largest first
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Classical starting guesses, refined by Newton.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * desc[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * desc[1];
    } else {
      z = 2.0 * z - desc[i - 2];
    }
    for (int it = 0; it < 100; ++it) {
      double h = boost::math::hermite(n, z);
      double dh = 2.0 * n * boost::math::hermite(n - 1, z);
      double dz = h / dh;
      z -= dz;
      if (std::fabs(dz) <= 1e-15 * (1.0 + std::fabs(z))) break;
    }
    desc.push_back(z);
    r.nodes[n - 1 - i] = z;
    r.nodes[i] = -z;
  }
  if (n % 2 == 1) r.nodes[half] = 0.0;
  for (int i = 0; i < n; ++i) {
    double hm1 = boost::math::hermite(n - 1, r.nodes[i]);
    r.weights[i] = std::exp(logc - 2.0 * std::log(std::fabs(hm1)));
  }
  return r;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
  if (n < 1 || n > 150) throw std::invalid_argument("gauss_hermite: n out of range");
  static std::mutex mu;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &err);
}

}  // namespace dlv
