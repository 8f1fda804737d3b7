// Traveling fronts written as polynomials in T = tanh(mu (x - alpha t)).
#include <cmath>

#include "dlv/errors.hpp"
#include "solutions_internal.hpp"

namespace dlv::detail {

namespace {

std::vector<double> quad(double c0, double c1, double c2) { return {c0, c1, c2}; }
std::vector<double> lin(double c0, double c1) { return {c0, c1}; }

// Window covering |mu (x - alpha t)| <= 6 at t = 0 and moving with the front.
Window front_window(double mu, double alpha) {
  Window w;
  w.t0 = 0.0;
  w.t1 = 1.0;
  double c = 0.5 * alpha;
  double half = 6.0 / std::fabs(mu);
  w.x0 = c - half;
  w.x1 = c + half;
  return w;
}

}  // namespace

ClosedFormSolution make_rm2000_a(const ParamMap& p) {
  const std::string id = "RM2000_A";
  Number a = param(p, "a"), lam = param(p, "lambda");
  require(a > 0, id, "a > 0");
  require(lam > 0, id, "lambda > 0");
  Number b21 = -(2 * lam + Number(5, 3) * a - a * lam / 3);
  DlvModel md = DlvModel::two_component(1, lam, 1, a, -1, Number(-1, 3), b21, -1, id);
  Number mu = sqrt(a) / (2 * sqrt(Number(6)));
  Number alpha = (a - 6) / sqrt(6 * a);
  double av = a.value();
  TanhForm f{{lin(0.5, 0.5), quad(av / 4, -av / 2, av / 4)}, mu.value(), alpha.value(), false};
  auto s = make_tanh_solution(id, md, f, front_window(f.mu, f.alpha));
  s.derived = {{"mu", mu}, {"alpha", alpha}, {"b2", -b21}};
  return s;
}

ClosedFormSolution make_rm2000_b(const ParamMap& p) {
  const std::string id = "RM2000_B";
  Number a = param(p, "a"), c = param(p, "c");
  require(a > 0, id, "a > 0");
  require(1 + a * c > 0, id, "1 + a c > 0");
  require(!same(a * c, 5), id, "a c != 5");
  Number lam2 = (1 + a * (c - 6)) / (5 - a * c);
  require(lam2 > 0, id, "lambda2 = (1 + a(c-6))/(5 - a c) > 0");
  DlvModel md = DlvModel::two_component(1, lam2, 1, a, -1, -c, -(a * c + 1 - a), -1, id);
  Number mu = sqrt(1 + a * c) / (2 * sqrt(Number(6)));
  Number alpha = ((a * c - 5) / 12) / mu;
  double av = a.value();
  TanhForm f{{quad(0.25, 0.5, 0.25), quad(av / 4, -av / 2, av / 4)}, mu.value(), alpha.value(), false};
  auto s = make_tanh_solution(id, md, f, front_window(f.mu, f.alpha));
  s.derived = {{"lambda2", lam2}, {"mu", mu}, {"alpha", alpha}};
  return s;
}

ClosedFormSolution make_fisher(const ParamMap& p, bool coth) {
  const std::string id = coth ? "FISHER_COTH" : "FISHER_FRONT";
  Number a1 = param(p, "a1"), a2 = param(p, "a2"), b1 = param(p, "b1"), b2 = param(p, "b2"), c1 = param(p, "c1"),
         c2 = param(p, "c2");
  int branch = has(p, "branch") ? static_cast<int>(param(p, "branch").value()) : 0;
  require(branch == 0 || branch == 1, id, "branch is 0 (beta0 = 0) or 1 (beta0 = a2/c2)");

  Number beta0, beta1, a, b;
  if (branch == 0) {
    require(same(a1, a2), id, "beta0 = 0 branch: a1 = a2");
    require(!same(c1, c2), id, "beta0 = 0 branch: c1 != c2");
    beta0 = 0;
    beta1 = (b1 - b2) / (c2 - c1);
    a = a1;
    b = (c1 * b2 - b1 * c2) / (c1 - c2);
  } else {
    require(!c2.is_zero(), id, "beta0 = a2/c2 branch: c2 != 0");
    beta0 = a2 / c2;
    if (!same(c1, c2)) {
      beta1 = (b1 - b2) / (c2 - c1);
      require(near_equal(beta1 * (a1 * c2 - a2 * c1 + a2 * c2) + a2 * b2, 0, 1e-12), id,
              "beta0 = a2/c2 branch: beta1 (a1 c2 - a2 c1 + a2 c2) + a2 b2 = 0");
    } else {
      require(same(b1, b2), id, "c1 = c2 requires b1 = b2");
      require(!a1.is_zero() && !c1.is_zero(), id, "c1 = c2 branch: a1 c1 != 0");
      beta1 = -a2 * b1 / (a1 * c1);
    }
    a = a1 - a2 * c1 / c2;
    b = b1 + c1 * beta1;
  }
  require(a > 0, id, "a > 0");
  require(!b.is_zero(), id, "b != 0");

  DlvModel md = DlvModel::two_component(1, 1, a1, a2, -b1, -c1, -b2, -c2, id);
  Number mu = sqrt(a / 24);
  Number alpha = 5 * a / (12 * mu);
  double k = (a / (4 * b)).value();
  double B0 = beta0.value(), B1 = beta1.value();
  TanhForm f{{quad(k, -2 * k, k), quad(B0 + B1 * k, -2 * B1 * k, B1 * k)}, mu.value(), alpha.value(), coth};
  Window w = front_window(f.mu, f.alpha);
  if (coth) {
    // stay on the side z > 0 of the moving singular line for the whole time window
    w.x0 = f.alpha * w.t1 + 1.0 / f.mu;
    w.x1 = w.x0 + 6.0 / f.mu;
  }
  auto s = make_tanh_solution(id, md, f, w);
  s.derived = {{"beta0", beta0}, {"beta1", beta1}, {"a", a}, {"b", b}, {"mu", mu}, {"alpha", alpha}};
  return s;
}

ClosedFormSolution make_predprey(const ParamMap& p) {
  const std::string id = "PREDPREY_FRONT";
  Number a1 = param(p, "a1"), a2 = param(p, "a2"), b1 = param(p, "b1"), b2 = param(p, "b2"), c = param(p, "c");
  Number disc = a1 * b2 - a2 * b1;
  require(disc > 0, id, "component v nonpositive: a1 b2 - a2 b1 > 0");
  require(3 * b1 + b2 > 0, id, "3 b1 + b2 > 0");
  require(!c.is_zero(), id, "c != 0");
  Number den = a2 * b1 - 3 * a1 * (2 * b1 + b2);
  require(!den.is_zero(), id, "a2 b1 - 3 a1 (2 b1 + b2) != 0");
  Number L = (a2 * (5 * b1 + b2) - 2 * a1 * b2) / den;
  require(L > 0, id, "lambda = (a2(5b1+b2) - 2a1b2)/(a2b1 - 3a1(2b1+b2)) > 0");
  DlvModel md = DlvModel::two_component(1, L, a1, -a2, -b1, -c, b2, -3 * c, id);
  Number alpha = den / sqrt(2 * (3 * b1 + b2) * disc);
  Number mu = sqrt(disc / (8 * (3 * b1 + b2)));
  double P = ((3 * a1 + a2) / (2 * (3 * b1 + b2))).value();
  double Q = (disc / (4 * c * (3 * b1 + b2))).value();
  TanhForm f{{lin(P, P), quad(Q, 2 * Q, Q)}, mu.value(), alpha.value(), false};
  auto s = make_tanh_solution(id, md, f, front_window(f.mu, f.alpha));
  s.derived = {{"lambda", L}, {"alpha", alpha}, {"mu", mu}};
  return s;
}

ClosedFormSolution make_hung11(const ParamMap& p) {
  const std::string id = "HUNG11_TW";
  Number a = param(p, "a"), al = param(p, "alpha");
  require(!a.is_zero(), id, "a != 0");
  require(!(8 - a + 4 * al).is_zero(), id, "8 - a + 4 alpha != 0");
  require(!(2 + al - a).is_zero(), id, "2 + alpha - a != 0");
  DlvModel::Row3 r1{a, -1, (4 * al - a - 16) / a, (a - 4 - 2 * al) / (2 + al - a)};
  DlvModel::Row3 r2{a, (a - 24) / (8 - a + 4 * al), -1, (a - 4 + 2 * al) / (2 + al - a)};
  DlvModel::Row3 r3{a, (a - 4 - 2 * al) / (8 - a + 4 * al), (2 * al - a - 4) / a, -1};
  DlvModel md = DlvModel::three_component(1, 1, 1, r1, r2, r3, id);
  double k = (2 + al - a / 4).value(), av = a.value(), w = (a - 2 - al).value();
  TanhForm f{{quad(k, -2 * k, k), quad(av / 4, av / 2, av / 4), lin(w, -w)}, 1.0, al.value(), false};
  auto s = make_tanh_solution(id, md, f, front_window(1.0, f.alpha));
  s.derived = {{"mu", 1}, {"alpha", al}};
  return s;
}

ClosedFormSolution make_ch12(const ParamMap& p) {
  const std::string id = "CH12_TW";
  Number a = param(p, "a"), e = param(p, "e");
  require(!a.is_zero(), id, "a != 0");
  require(!same(e, 1), id, "e != 1");
  Number em1 = e - 1;
  Number alpha = (a - 4 + 20 * e - a * e) / (2 * em1);
  Number k = 8 * (1 - 3 * e) / (a * em1);
  DlvModel::Row3 r1{a, -1, k, -e};
  DlvModel::Row3 r2{a, (8 + 3 * a + e * (24 - 3 * a)) / (a * em1), -1, (a - 24) * (1 - e) / 16};
  DlvModel::Row3 r3{a, 2 * (a + 8 * e - a * e) / (a * em1), k, -1};
  DlvModel md = DlvModel::three_component(1, 1, 1, r1, r2, r3, id);
  double av = a.value(), wv = (4 / em1).value();
  TanhForm f{{lin(av / 2, av / 2), quad(av / 4, -av / 2, av / 4), quad(wv, 0.0, -wv)}, 1.0, alpha.value(), false};
  auto s = make_tanh_solution(id, md, f, front_window(1.0, f.alpha));
  s.derived = {{"mu", 1}, {"alpha", alpha}};
  return s;
}

ClosedFormSolution make_cpp(const ParamMap& p) {
  const std::string id = "CPP_FRONT";
  Number a1 = param(p, "a1"), a2 = param(p, "a2"), a3 = param(p, "a3");
  Number b1 = param(p, "b1"), b2 = param(p, "b2"), b3 = param(p, "b3");
  Number c1 = param(p, "c1"), c2 = param(p, "c2"), c3 = param(p, "c3");
  require(a3 < 16, id, "a3 < 16");
  require(a1 > -4, id, "a1 > -4");
  require(a2 > -4, id, "a2 > -4");
  Number D = b3 * c2 - b2 * c3;
  require(!D.is_zero(), id, "b3 c2 != b2 c3");
  Number lhs = (24 + a3) * (b1 * c2 - b2 * c1);
  Number rhs = (8 - a1) * (b2 * c3 - b3 * c2) + (8 - a2) * (b3 * c1 - b1 * c3);
  require(near_equal(lhs, rhs, 1e-12),
          id, "(24+a3)(b1 c2 - b2 c1) = (8-a1)(b2 c3 - b3 c2) + (8-a2)(b3 c1 - b1 c3)");
  Number l1 = 2 * (4 + a1) / (16 - a3);
  Number l2 = 2 * (4 + a2) / (16 - a3);
  Number speed = (a3 - 16) / 4;
  Number U = ((8 - a2) * c3 + (24 + a3) * c2) / (2 * D);
  Number V = ((a2 - 8) * b3 - (24 + a3) * b2) / (2 * D);
  DlvModel::Row3 r1{a1, -b1, -c1, -1}, r2{a2, -b2, -c2, -1}, r3{-a3, b3, c3, -3};
  DlvModel md = DlvModel::three_component(l1, l2, 1, r1, r2, r3, id);
  double u = U.value(), v = V.value();
  TanhForm f{{lin(u, u), lin(v, v), quad(2.0, 4.0, 2.0)}, 1.0, speed.value(), false};
  auto s = make_tanh_solution(id, md, f, front_window(1.0, f.alpha));
  s.derived = {{"lambda1", l1}, {"lambda2", l2}, {"speed", speed}, {"U", U}, {"V", V}, {"W", 2}};
  return s;
}

}  // namespace dlv::detail
