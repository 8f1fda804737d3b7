// Solutions built from conditional-symmetry ansaetze.
#include <cmath>
#include <numbers>

#include "dlv/errors.hpp"
#include "dlv/quadrature.hpp"
#include "solutions_internal.hpp"

namespace dlv::detail {

namespace {

constexpr double kPi = std::numbers::pi;

// u = -a1 + Phi/(a2 - a1), v = Phi/(a1 - a2) for the all-ones system, where Phi = phi(x) e^{beta t}.
struct LinearPhi {
  double v, x, xx;
};

JetPoint all_ones_jet(double a1, double a2, double beta, double E, const LinearPhi& ph, double t, double x) {
  JetPoint j = JetPoint::zeros(2, t, x);
  double k = 1.0 / (a1 - a2);
  j.u = {-a1 - ph.v * E * k, ph.v * E * k};
  j.u_t = {-beta * ph.v * E * k, beta * ph.v * E * k};
  j.u_x = {-ph.x * E * k, ph.x * E * k};
  j.u_xx = {-ph.xx * E * k, ph.xx * E * k};
  return j;
}

}  // namespace

ClosedFormSolution make_cd11_linear(const ParamMap& p, bool trig) {
  const std::string id = trig ? "CD11_TRIG" : "CD11_EXP";
  Number a1 = param(p, "a1"), a2 = param(p, "a2"), l1 = param(p, "lambda1"), l2 = param(p, "lambda2");
  require(!same(a1, a2), id, "a1 != a2");
  require(!same(l1, l2), id, "lambda1 != lambda2");
  Number beta = (a1 - a2) / (l1 - l2);
  if (trig) {
    require(beta < 0, id, "trig branch requires beta<0, beta = (a1-a2)/(lambda1-lambda2)");
  } else {
    require(beta > 0, id, "exp branch requires beta>0, beta = (a1-a2)/(lambda1-lambda2)");
  }
  Number s = sqrt(abs(beta * l1));
  DlvModel md = DlvModel::two_component(l1, l2, a1, a2, 1, 1, 1, 1, id);
  double A1 = a1.value(), A2 = a2.value(), B = beta.value(), S = s.value();
  double C1 = param(p, "C1").value(), C2 = param(p, "C2").value();

  ClosedFormSolution sol;
  sol.model = md;
  sol.autonomous = false;
  sol.jet_fn = [=](double t, double x) {
    LinearPhi ph{};
    if (trig) {
      double c = std::cos(S * x), sn = std::sin(S * x);
      ph = {C1 * c + C2 * sn, S * (-C1 * sn + C2 * c), -S * S * (C1 * c + C2 * sn)};
    } else {
      double ep = std::exp(S * x), em = std::exp(-S * x);
      ph = {C1 * ep + C2 * em, S * (C1 * ep - C2 * em), S * S * (C1 * ep + C2 * em)};
    }
    return all_ones_jet(A1, A2, B, std::exp(B * t), ph, t, x);
  };
  if (trig) {
    sol.window = {0.0, 1.0, 0.0, 2.0 * kPi / S};
    sol.asymptote = Vec{-A1, 0.0};
  } else {
    sol.window = {0.0, 1.0, -2.0 / S, 2.0 / S};
  }
  sol.derived = {{"beta", beta}, {"s", s}};
  return sol;
}

ClosedFormSolution make_cd11_tanh(const ParamMap& p, bool cubic_sinh) {
  const std::string id = cubic_sinh ? "CD11_TANH3" : "CD11_TANH2";
  Number a1 = param(p, "a1"), a2 = param(p, "a2"), l2 = param(p, "lambda2");
  require(a1 > a2, id, "a1 > a2");
  require(l2 > 0, id, "lambda2 > 0");
  Number l1 = (cubic_sinh ? Number(4, 3) : Number(9, 5)) * l2;
  Number beta = (a1 - a2) / (l1 - l2);
  Number k = sqrt(a1 - a2) / 2;
  DlvModel md = DlvModel::two_component(l1, l2, a1, a2, 1, 1, 1, 1, id);
  const double A1 = a1.value(), A2 = a2.value(), B = beta.value(), K = k.value();
  const double C1 = param(p, "C1").value(), C2 = param(p, "C2").value();
  const double amp = 1.5 * (A1 - A2);

  ClosedFormSolution sol;
  sol.model = md;
  sol.autonomous = false;
  sol.jet_fn = [=](double t, double x) {
    double ch = std::cosh(K * x), sh = std::sinh(K * x), T = std::tanh(K * x);
    double sech2 = 1.0 / (ch * ch);
    // phi1 = amp sech^2(kx) - a1, phi1'' from its ODE
    double psi = amp * sech2;
    double p1 = psi - A1;
    double p1x = -2.0 * K * T * psi;
    double p1xx = -psi * psi + (A1 - A2) * psi;
    double f, fx, fxx, I;
    if (cubic_sinh) {
      f = sh * ch * ch * ch;
      fx = K * (ch * ch * ch * ch + 3.0 * sh * sh * ch * ch);
      fxx = K * K * sh * ch * (10.0 * ch * ch + 6.0 * sh * sh);
      I = integrate(
          [K](double y) {
            double c = std::cosh(K * y), s = std::sinh(K * y);
            double g = s * c * c * c;
            return 1.0 / (g * g);
          },
          1.0, x);
    } else {
      f = ch * ch * ch;
      fx = 3.0 * K * ch * ch * sh;
      fxx = 3.0 * K * K * (2.0 * ch * sh * sh + ch * ch * ch);
      double T3 = T * T * T;
      I = (T - 2.0 * T3 / 3.0 + T3 * T * T / 5.0) / K;
    }
    double c = C1 + C2 * I;
    double p2 = f * c, p2x = fx * c + C2 / f, p2xx = fxx * c;
    double E = std::exp(B * t);
    double d = 1.0 / (A1 - A2);
    JetPoint j = JetPoint::zeros(2, t, x);
    j.u = {(-E * p2 + A1 * p1 + A1 * A2) * d, (E * p2 - A2 * p1 - A1 * A2) * d};
    j.u_t = {-B * E * p2 * d, B * E * p2 * d};
    j.u_x = {(-E * p2x + A1 * p1x) * d, (E * p2x - A2 * p1x) * d};
    j.u_xx = {(-E * p2xx + A1 * p1xx) * d, (E * p2xx - A2 * p1xx) * d};
    return j;
  };
  if (cubic_sinh) {
    sol.valid_fn = [](double, double x) { return x > kGuardBand; };
    sol.window = {0.0, 1.0, 0.5, 3.0};
  } else {
    sol.window = {0.0, 1.0, -3.0, 3.0};
  }
  sol.derived = {{"lambda1", l1}, {"beta", beta}, {"k", k}};
  return sol;
}

ClosedFormSolution make_cd11_comp(const ParamMap& p) {
  const std::string id = "CD11_COMP";
  Number a1 = param(p, "a1"), a2 = param(p, "a2"), b = param(p, "b"), c = param(p, "c");
  Number l1 = param(p, "lambda1"), l2 = param(p, "lambda2");
  require(a1 > 0, id, "a1 > 0");
  require(a2 > 0, id, "a2 > 0");
  require(b > 0, id, "b > 0");
  require(c > 0, id, "c > 0");
  require(!same(l1, l2), id, "lambda1 != lambda2");
  require(!same(a1, a2), id, "a1 != a2");
  Number beta = (a1 - a2) / (l1 - l2);
  require(beta < 0, id, "beta = (a1-a2)/(lambda1-lambda2) < 0");
  Number s = sqrt(-beta * l1);
  DlvModel md = DlvModel::two_component(l1, l2, a1, a2, -b, -c, -b, -c, id);
  const double A1 = a1.value(), A2 = a2.value(), Bb = b.value(), Cc = c.value(), B = beta.value(), S = s.value();
  const double C2 = param(p, "C2").value();
  ClosedFormSolution sol;
  sol.model = md;
  sol.autonomous = false;
  sol.jet_fn = [=](double t, double x) {
    double E = std::exp(B * t), sn = std::sin(S * x), cs = std::cos(S * x);
    double ku = C2 / ((A1 - A2) * Bb), kv = C2 / ((A2 - A1) * Cc);
    JetPoint j = JetPoint::zeros(2, t, x);
    j.u = {A1 / Bb + ku * sn * E, kv * sn * E};
    j.u_t = {B * ku * sn * E, B * kv * sn * E};
    j.u_x = {S * ku * cs * E, S * kv * cs * E};
    j.u_xx = {-S * S * ku * sn * E, -S * S * kv * sn * E};
    return j;
  };
  sol.window = {0.0, 1.0, 0.0, kPi / S};
  sol.asymptote = Vec{A1 / Bb, 0.0};
  sol.derived = {{"beta", beta}, {"s", s}};
  return sol;
}

ClosedFormSolution make_cd21(const ParamMap& p) {
  const std::string id = "CD21_CASE1";
  Number a1 = param(p, "a1"), a2 = param(p, "a2"), l1 = param(p, "lambda1"), l2 = param(p, "lambda2");
  const bool rescaled = has(p, "b") || has(p, "c");
  require(!rescaled || (has(p, "b") && has(p, "c")), id, "b and c are given together");
  Number b = rescaled ? param(p, "b") : Number(-1);
  Number c = rescaled ? param(p, "c") : Number(-1);
  require(!b.is_zero() && !c.is_zero(), id, "b c != 0");
  require(!same(l1, l2), id, "lambda1 != lambda2");
  require(!a1.is_zero() && !a2.is_zero(), id, "a1 a2 != 0");
  Number kap2 = (l1 * a2 - l2 * a1) / (l1 - l2);
  require(kap2 > 0, id, "kappa^2 = (lambda1 a2 - lambda2 a1)/(lambda1 - lambda2) > 0");
  Number kap = sqrt(kap2);
  Number r = l2 / l1;
  DlvModel md = DlvModel::two_component(l1, l2, a1, a2, -b, -c, -r * b, -r * c, id);

  const double A1 = a1.value(), A2 = a2.value(), L1 = l1.value(), L2 = l2.value();
  const double Bb = b.value(), Cc = c.value(), K2 = kap2.value(), K = kap.value();
  const double al0 = param(p, "alpha0").value(), al1 = param(p, "alpha1").value(), al2 = param(p, "alpha2").value();
  const double C1 = param(p, "C1").value(), C2 = param(p, "C2").value();

  auto Dfun = [=](double t) { return C1 + al0 * Bb * std::exp(A1 * t / L1) + C2 * L2 * std::exp(A2 * t / L2); };
  auto Dscale = [=](double t) {
    return std::fabs(C1) + std::fabs(al0 * Bb * std::exp(A1 * t / L1)) + std::fabs(C2 * L2 * std::exp(A2 * t / L2));
  };

  ClosedFormSolution sol;
  sol.model = md;
  sol.autonomous = false;
  sol.jet_fn = [=](double t, double x) {
    double E1 = std::exp(A1 * t / L1), E2 = std::exp(A2 * t / L2), H = std::exp(-K2 * t / L1);
    double sn = std::sin(K * x), cs = std::cos(K * x);
    double osc = H * (al1 * sn + al2 * cs);
    double G = al0 + osc, Gt = -K2 / L1 * osc, Gx = H * K * (al1 * cs - al2 * sn), Gxx = -K2 * osc;
    double D = C1 + al0 * Bb * E1 + C2 * L2 * E2;
    double Dt = al0 * Bb * (A1 / L1) * E1 + C2 * A2 * E2;
    double U = A1 * E1 * G / D;
    double Ut = A1 * ((A1 / L1) * E1 * G + E1 * Gt) / D - U * Dt / D;
    double Ux = A1 * E1 * Gx / D, Uxx = A1 * E1 * Gxx / D;
    double Mn = al0 * A1 * Bb * E1 + C2 * A2 * L1 * E2;
    double M = Mn / (Cc * D);
    double Mt = (al0 * A1 * Bb * (A1 / L1) * E1 + C2 * A2 * L1 * (A2 / L2) * E2) / (Cc * D) - M * Dt / D;
    double q = Bb / Cc;
    JetPoint j = JetPoint::zeros(2, t, x);
    j.u = {U, M - q * U};
    j.u_t = {Ut, Mt - q * Ut};
    j.u_x = {Ux, -q * Ux};
    j.u_xx = {Uxx, -q * Uxx};
    return j;
  };
  sol.valid_fn = [=](double t, double) { return std::fabs(Dfun(t)) > kGuardBand * (1.0 + Dscale(t)); };

  // D depends on t only; keep the time window before its first zero.
  double t1 = 2.0;
  const int n = 2000;
  for (int i = 1; i <= n; ++i) {
    double tt = 2.0 * i / n;
    if (Dfun(tt) * Dfun(0.0) <= 0.0) {
      t1 = 0.9 * 2.0 * (i - 1) / n;
      break;
    }
  }
  require(Dfun(0.0) != 0.0, id, "C1 + alpha0 b + C2 lambda2 != 0");
  sol.window = {0.0, t1, 0.0, 2.0 * kPi / K};

  double g1 = A1 / L1, g2 = A2 / L2;
  if (g1 > g2 && al0 != 0.0) {
    sol.asymptote = Vec{A1 / Bb, 0.0};
  } else if (g1 < g2 && C2 != 0.0) {
    sol.asymptote = Vec{0.0, A2 * L1 / (Cc * L2)};
  }
  sol.derived = {{"kappa2", kap2}, {"kappa", kap}};
  return sol;
}

ClosedFormSolution make_cd13(const ParamMap& p) {
  const std::string id = "CD13_3COMP";
  Number a1 = param(p, "a1"), a2 = param(p, "a2"), l1 = param(p, "lambda1"), l2 = param(p, "lambda2");
  Number b = param(p, "b"), c = param(p, "c"), e = param(p, "e"), al = param(p, "alpha"), v0 = param(p, "v0");
  require(!same(a1, a2), id, "a1 != a2 = a3");
  require(!same(l1, l2), id, "lambda1 != lambda2 = lambda3");
  require(!b.is_zero() && !c.is_zero() && !e.is_zero(), id, "b c e != 0");
  Number delta = (a1 - a2) / (l1 - l2);
  require(delta < 0, id, "delta = (a1-a2)/(lambda1-lambda2) < 0");
  Number s = sqrt(-delta * l2);
  DlvModel::Row3 r1{a1, -b, -c, -e}, r2{a2, -b, -c, -e}, r3{a2, -b, -c, -e};
  DlvModel md = DlvModel::three_component(l1, l2, l2, r1, r2, r3, id);
  const double B = b.value(), C = c.value(), Ee = e.value(), D = delta.value(), S = s.value();
  const double Al = al.value(), V0 = v0.value(), A2 = a2.value();
  const double C1 = has(p, "C1") ? param(p, "C1").value() : 0.0;
  const double C2 = has(p, "C2") ? param(p, "C2").value() : 1.0;
  ClosedFormSolution sol;
  sol.model = md;
  sol.autonomous = false;
  sol.jet_fn = [=](double t, double x) {
    double cs = std::cos(S * x), sn = std::sin(S * x), E = std::exp(D * t);
    double ph = C1 * cs + C2 * sn, phx = S * (-C1 * sn + C2 * cs), phxx = -S * S * ph;
    double ku = 1.0 / B, kv = (Al / D - 1.0) / C, kw = -Al / (Ee * D);
    JetPoint j = JetPoint::zeros(3, t, x);
    j.u = {ku * ph * E, V0 / C + kv * ph * E, (A2 - V0) / Ee + kw * ph * E};
    j.u_t = {D * ku * ph * E, D * kv * ph * E, D * kw * ph * E};
    j.u_x = {ku * phx * E, kv * phx * E, kw * phx * E};
    j.u_xx = {ku * phxx * E, kv * phxx * E, kw * phxx * E};
    return j;
  };
  sol.window = {0.0, 1.0, 0.0, kPi / S};
  sol.asymptote = Vec{0.0, V0 / C, (A2 - V0) / Ee};
  sol.derived = {{"delta", delta}, {"s", s}};
  return sol;
}

}  // namespace dlv::detail
