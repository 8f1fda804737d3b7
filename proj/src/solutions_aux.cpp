#include <cmath>

#include "dlv/errors.hpp"
#include "solutions_internal.hpp"

namespace dlv {

ClosedFormSolution power_solution(Number lambda1, Number lambda2, Number b1, Number b2) {
  const std::string id = "POWER_AUX";
  detail::require(!b1.is_zero(), id, "b1 != 0");
  DlvModel md = DlvModel::two_component(lambda1, lambda2, 0, 0, b1, 0, b2, 0, id);
  const double L1 = lambda1.value(), L2 = lambda2.value(), B1 = b1.value();
  const double r = (b2 * lambda1 / (b1 * lambda2)).value();
  auto jetf = [=](double t, double x) {
    JetPoint j = JetPoint::zeros(2, t, x);
    double tr = std::pow(t, -r);
    double v = tr * (x * x + 2.0 * t / L2);
    j.u = {-L1 / (B1 * t), v};
    j.u_t = {L1 / (B1 * t * t), -r * v / t + 2.0 * tr / L2};
    j.u_x = {0.0, 2.0 * x * tr};
    j.u_xx = {0.0, 2.0 * tr};
    return j;
  };
  auto s = wrap_solution(id, md, jetf, [](double t, double) { return t > kGuardBand; }, {0.5, 1.5, -1.0, 1.0},
                         false);
  s.derived = {{"r", b2 * lambda1 / (b1 * lambda2)}};
  return s;
}

ClosedFormSolution case5_solution(Number lambda, Number b1) {
  const std::string id = "CASE5_AUX";
  detail::require(!b1.is_zero(), id, "b1 != 0");
  DlvModel md = DlvModel::two_component(lambda, lambda, 0, 0, b1, 0, b1, 0, id);
  const double B1 = b1.value();
  auto jetf = [=](double t, double x) {
    JetPoint j = JetPoint::zeros(2, t, x);
    double x2 = x * x;
    double u = -6.0 / (B1 * x2), ux = 12.0 / (B1 * x2 * x), uxx = -36.0 / (B1 * x2 * x2);
    j.u = {u, u};
    j.u_x = {ux, ux};
    j.u_xx = {uxx, uxx};
    return j;
  };
  return wrap_solution(id, md, jetf, [](double, double x) { return std::fabs(x) > kGuardBand; },
                       {0.0, 1.0, 1.0, 3.0}, true);
}

ClosedFormSolution case4_solution(Number a1, Number b1) {
  const std::string id = "CASE4_AUX";
  detail::require(a1 > 0, id, "a1 > 0");
  detail::require(b1 < 0, id, "b1 < 0");
  DlvModel md = DlvModel::two_component(1, 1, a1, a1, b1, 0, b1, 0, id);
  Number mu = sqrt(a1 / 24);
  Number alpha = 5 * a1 / (12 * mu);
  double k = (a1 / (-4 * b1)).value();
  std::vector<double> A = {k, -2 * k, k};
  TanhForm f{{A, A}, mu.value(), alpha.value(), false};
  double half = 6.0 / f.mu;
  auto s = detail::make_tanh_solution(id, md, f, {0.0, 1.0, 0.5 * f.alpha - half, 0.5 * f.alpha + half});
  s.derived = {{"mu", mu}, {"alpha", alpha}};
  return s;
}

ClosedFormSolution constant_solution(const DlvModel& model, const Vec& u) {
  if (static_cast<int>(u.size()) != model.m()) throw DimensionError("state has wrong size");
  auto s = wrap_solution(
      "CONSTANT", model,
      [u](double t, double x) {
        JetPoint j = JetPoint::zeros(static_cast<int>(u.size()), t, x);
        j.u = u;
        return j;
      },
      nullptr, {}, true);
  s.asymptote = u;
  return s;
}

}  // namespace dlv
