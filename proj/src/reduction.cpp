#include "dlv/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/numeric/odeint.hpp>

#include "dlv/errors.hpp"
#include "dlv/io.hpp"
#include "dlv/quadrature.hpp"

namespace dlv {

namespace {

constexpr double kPi = std::numbers::pi;

bool near(double a, double b) { return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(a) + std::fabs(b)); }

Vec zeros(int n) { return Vec(static_cast<std::size_t>(n), 0.0); }

}  // namespace

std::string ansatz_name(AnsatzId id) {
  switch (id) {
    case AnsatzId::TW:
      return "TW";
    case AnsatzId::A64:
      return "A64";
    case AnsatzId::A619:
      return "A619";
    case AnsatzId::A620:
      return "A620";
    case AnsatzId::A621:
      return "A621";
    case AnsatzId::A73:
      return "A73";
  }
  return "?";
}

AnsatzId ansatz_from_name(const std::string& name) {
  for (AnsatzId id : {AnsatzId::TW, AnsatzId::A64, AnsatzId::A619, AnsatzId::A620, AnsatzId::A621, AnsatzId::A73}) {
    if (ansatz_name(id) == name) return id;
  }
  throw DlvError("unknown ansatz '" + name + "' (expected TW, A64, A619, A620, A621 or A73)");
}

ProfilePoint Profile::eval(double omega) const {
  double slack = 1e-12 * (1.0 + std::fabs(lo) + std::fabs(hi));
  if (!(omega >= lo - slack && omega <= hi + slack)) {
    throw DomainError("profile evaluated at " + format_double(omega) + " outside [" + format_double(lo) + ", " +
                      format_double(hi) + "]");
  }
  return fn(omega);
}

Profile constant_profile(const Vec& phi, double lo, double hi) {
  Profile p;
  p.dim = static_cast<int>(phi.size());
  p.lo = lo;
  p.hi = hi;
  p.fn = [phi](double) { return ProfilePoint{phi, zeros(static_cast<int>(phi.size())), zeros(static_cast<int>(phi.size()))}; };
  return p;
}

Profile shift_profile(const Profile& p, double s) {
  Profile q = p;
  q.lo = p.lo + s;
  q.hi = p.hi + s;
  auto f = p.fn;
  q.fn = [f, s](double w) { return f(w - s); };
  return q;
}

Profile offset_profile(const Profile& p, double c) {
  Profile q = p;
  auto f = p.fn;
  q.fn = [f, c](double w) {
    ProfilePoint pt = f(w);
    for (double& v : pt.phi) v += c;
    return pt;
  };
  return q;
}

// ---------------------------------------------------------------------------
// Reduced systems

ReducedSystem tw_reduce(const DlvModel& model, double alpha) {
  const int m = model.m();
  if (m < 2 || m > 3) throw DimensionError("traveling-wave reduction needs m = 2 or 3");
  ReducedSystem rs;
  rs.id = "traveling-wave";
  rs.order = 2;
  rs.dim = m;
  rs.params = {{"alpha", Number(alpha)}};
  auto reac = [model](const Vec& phi) { return reaction(model, phi); };
  rs.residual = [model, alpha, reac](double, const Vec& phi, const Vec& d, const Vec& dd) {
    Vec f = reac(phi);
    for (int i = 0; i < model.m(); ++i) f[i] += dd[i] + alpha * model.lambda(i) * d[i];
    return f;
  };
  rs.rhs = [model, alpha, reac](double, const Vec& phi, const Vec& d) {
    Vec f = reac(phi);
    for (int i = 0; i < model.m(); ++i) f[i] = -f[i] - alpha * model.lambda(i) * d[i];
    return f;
  };
  return rs;
}

ReducedSystem reduced_equal_coupling(double a1, double a2, double l1, double l2, bool variant) {
  if (near(l1, l2)) throw RestrictionError("equal-coupling reduction", "lambda1 != lambda2");
  const double K = (a2 * l1 - a1 * l2) / (l1 - l2);
  const double c1 = variant ? a2 : a1 + a2, c0 = variant ? 0.0 : a1 * a2;
  ReducedSystem rs;
  rs.id = variant ? "equal-coupling (second/third operator)" : "equal-coupling";
  rs.order = 2;
  rs.dim = 2;
  rs.params = {{"a1", Number(a1)}, {"a2", Number(a2)}, {"lambda1", Number(l1)}, {"lambda2", Number(l2)},
               {"K", Number(K)}};
  auto f = [=](const Vec& p) {
    return Vec{p[0] * p[0] + c1 * p[0] + c0, K * p[1] + p[0] * p[1]};
  };
  rs.residual = [f](double, const Vec& p, const Vec&, const Vec& dd) {
    Vec r = f(p);
    r[0] += dd[0];
    r[1] += dd[1];
    return r;
  };
  rs.rhs = [f](double, const Vec& p, const Vec&) {
    Vec r = f(p);
    return Vec{-r[0], -r[1]};
  };
  return rs;
}

ReducedSystem reduced_linear(double beta, double l1) {
  ReducedSystem rs;
  rs.id = "linear";
  rs.order = 2;
  rs.dim = 1;
  rs.params = {{"beta", Number(beta)}, {"lambda1", Number(l1)}};
  const double k = beta * l1;
  rs.residual = [k](double, const Vec& p, const Vec&, const Vec& dd) { return Vec{dd[0] - k * p[0]}; };
  rs.rhs = [k](double, const Vec& p, const Vec&) { return Vec{k * p[0]}; };
  return rs;
}

ReducedSystem reduced_sech_potential(double a1, double a2, double l1, double l2) {
  if (!(a1 > a2)) throw RestrictionError("sech-potential reduction", "a1 > a2");
  if (near(l1, l2)) throw RestrictionError("sech-potential reduction", "lambda1 != lambda2");
  const double k = std::sqrt(a1 - a2) / 2.0, c = (l1 - 3.0 * l2) / (2.0 * (l1 - l2));
  auto pot = [=](double x) {
    double T = std::tanh(k * x);
    return (a1 - a2) * (c - 1.5 * T * T);
  };
  ReducedSystem rs;
  rs.id = "sech-potential";
  rs.order = 2;
  rs.dim = 1;
  rs.params = {{"a1", Number(a1)}, {"a2", Number(a2)}, {"lambda1", Number(l1)}, {"lambda2", Number(l2)}};
  rs.residual = [pot](double x, const Vec& p, const Vec&, const Vec& dd) { return Vec{dd[0] + pot(x) * p[0]}; };
  rs.rhs = [pot](double x, const Vec& p, const Vec&) { return Vec{-pot(x) * p[0]}; };
  return rs;
}

ReducedSystem reduced_g_trig_exp(double a1, double a2, double l1, double l2, double alpha0) {
  if (near(l1, l2)) throw RestrictionError("g-branch reduction", "lambda1 != lambda2");
  const double r = l2 / l1, src = alpha0 * (a1 * r - a2);
  ReducedSystem rs;
  rs.id = "g-branch (trig/exp)";
  rs.order = 1;
  rs.dim = 2;
  rs.params = {{"a1", Number(a1)}, {"a2", Number(a2)}, {"lambda1", Number(l1)}, {"lambda2", Number(l2)},
               {"alpha0", Number(alpha0)}};
  rs.rhs = [=](double, const Vec& p, const Vec&) {
    return Vec{p[0] * (a1 + p[1]) / l1, ((a2 + r * p[1]) * p[1] + src * p[0]) / l2};
  };
  rs.residual = [=](double, const Vec& p, const Vec& d, const Vec&) {
    return Vec{l1 * d[0] - p[0] * (a1 + p[1]), l2 * d[1] - (a2 + r * p[1]) * p[1] - src * p[0]};
  };
  return rs;
}

ReducedSystem reduced_g_poly(double a1, double l1, double l2, double alpha2) {
  if (near(l1, l2)) throw RestrictionError("g-branch reduction", "lambda1 != lambda2");
  const double r = l2 / l1, src = -2.0 * alpha2 * (l1 - l2);
  ReducedSystem rs;
  rs.id = "g-branch (poly)";
  rs.order = 1;
  rs.dim = 2;
  rs.params = {{"a1", Number(a1)}, {"lambda1", Number(l1)}, {"lambda2", Number(l2)}, {"alpha2", Number(alpha2)}};
  rs.rhs = [=](double, const Vec& p, const Vec&) {
    return Vec{p[0] * (a1 + p[1]) / l1, (r * (a1 + p[1]) * p[1] + src * p[0]) / l2};
  };
  rs.residual = [=](double, const Vec& p, const Vec& d, const Vec&) {
    return Vec{l1 * d[0] - p[0] * (a1 + p[1]), l2 * d[1] - r * (a1 + p[1]) * p[1] - src * p[0]};
  };
  return rs;
}

ReducedSystem reduced_three_species(double a1, double a2, double a3, double l1, double l2) {
  if (near(l1, l2)) throw RestrictionError("three-species reduction", "lambda1 != lambda2");
  const double K = (l1 * a2 - l2 * a1) / (l1 - l2);
  ReducedSystem rs;
  rs.id = "three-species";
  rs.order = 2;
  rs.dim = 3;
  rs.params = {{"a1", Number(a1)}, {"a2", Number(a2)}, {"a3", Number(a3)},
               {"lambda1", Number(l1)}, {"lambda2", Number(l2)}, {"K", Number(K)}};
  auto f = [=](const Vec& p) {
    double s = p[1] + p[2];
    return Vec{p[0] * (K - s), p[1] * (a2 - s), p[2] * (a3 - s)};
  };
  rs.residual = [f](double, const Vec& p, const Vec&, const Vec& dd) {
    Vec r = f(p);
    for (int i = 0; i < 3; ++i) r[i] += dd[i];
    return r;
  };
  rs.rhs = [f](double, const Vec& p, const Vec&) {
    Vec r = f(p);
    for (double& v : r) v = -v;
    return r;
  };
  return rs;
}

Vec reduced_residual(const ReducedSystem& rs, const Profile& p, double omega) {
  if (p.dim != rs.dim) throw DimensionError("profile has " + std::to_string(p.dim) + " components, system " +
                                            std::to_string(rs.dim));
  ProfilePoint pt = p.eval(omega);
  return rs.residual(omega, pt.phi, pt.dphi, pt.ddphi);
}

// ---------------------------------------------------------------------------
// Ansaetze

namespace {

std::string label(AnsatzId id) { return "ansatz " + ansatz_name(id); }

double get(const ParamMap& p, const std::string& k, double fallback) {
  auto it = p.find(k);
  return it == p.end() ? fallback : it->second.value();
}

void check_dim(const Profile& p, int dim, AnsatzId id) {
  if (p.dim != dim) {
    throw DimensionError(label(id) + " lifts " + std::to_string(dim) + "-component profiles, got " +
                         std::to_string(p.dim));
  }
}

Ansatz build_tw(const DlvModel& md, const ParamMap& params) {
  Ansatz a;
  a.id = AnsatzId::TW;
  a.model = md;
  const double alpha = get(params, "alpha", 0.0);
  a.params = {{"alpha", Number(alpha)}};
  a.reduced = tw_reduce(md, alpha);
  a.lift = [md, alpha](const Profile& p) {
    check_dim(p, md.m(), AnsatzId::TW);
    auto fn = p.fn;
    const double lo = p.lo, hi = p.hi;
    auto jetf = [fn, alpha, m = md.m()](double t, double x) {
      ProfilePoint pt = fn(x - alpha * t);
      JetPoint j = JetPoint::zeros(m, t, x);
      j.u = pt.phi;
      j.u_x = pt.dphi;
      j.u_xx = pt.ddphi;
      for (int i = 0; i < m; ++i) j.u_t[i] = -alpha * pt.dphi[i];
      return j;
    };
    auto valid = [lo, hi, alpha](double t, double x) {
      double w = x - alpha * t;
      return w >= lo && w <= hi;
    };
    Window w{0.0, 1.0, lo + std::max(0.0, alpha), hi + std::min(0.0, alpha)};
    if (w.x1 <= w.x0) w = {0.0, 0.0, lo, hi};
    return wrap_solution("TW lift", md, jetf, valid, w, true);
  };
  return a;
}

Ansatz build_a64(const DlvModel& md) {
  const AnsatzId id = AnsatzId::A64;
  if (md.m() != 2) throw DimensionError(label(id) + " needs a two-component model");
  const auto& b = md.b_exact();
  if (!(b[0][0] == b[1][0]) || !(b[0][1] == b[1][1]) || b[0][0].is_zero() || b[0][1].is_zero()) {
    throw RestrictionError(label(id), "both rows couple equally: b11 = b21 != 0, b12 = b22 != 0");
  }
  const Number a1 = md.a_exact()[0], a2 = md.a_exact()[1], l1 = md.lambda_exact()[0], l2 = md.lambda_exact()[1];
  if (a1 == a2) throw RestrictionError(label(id), "a1 != a2");
  if (l1 == l2) throw RestrictionError(label(id), "lambda1 != lambda2");
  Number beta = (a1 - a2) / (l1 - l2);
  Ansatz a;
  a.id = id;
  a.model = md;
  a.params = {{"beta", beta}};
  a.reduced = reduced_equal_coupling(a1.value(), a2.value(), l1.value(), l2.value());
  const double A1 = a1.value(), A2 = a2.value(), B = beta.value();
  const double s0 = 1.0 / md.b(0, 0), s1 = 1.0 / md.b(0, 1);
  a.lift = [=](const Profile& p) {
    check_dim(p, 2, id);
    auto fn = p.fn;
    auto jetf = [=](double t, double x) {
      ProfilePoint pt = fn(x);
      const Vec &f = pt.phi, &d = pt.dphi, &dd = pt.ddphi;
      double E = std::exp(B * t), k = 1.0 / (A1 - A2);
      JetPoint j = JetPoint::zeros(2, t, x);
      j.u = {s0 * k * (-E * f[1] + A1 * f[0] + A1 * A2), s1 * k * (E * f[1] - A2 * f[0] - A1 * A2)};
      j.u_t = {-s0 * k * B * E * f[1], s1 * k * B * E * f[1]};
      j.u_x = {s0 * k * (-E * d[1] + A1 * d[0]), s1 * k * (E * d[1] - A2 * d[0])};
      j.u_xx = {s0 * k * (-E * dd[1] + A1 * dd[0]), s1 * k * (E * dd[1] - A2 * dd[0])};
      return j;
    };
    const double lo = p.lo, hi = p.hi;
    return wrap_solution("A64 lift", md, jetf, [lo, hi](double, double x) { return x >= lo && x <= hi; },
                         Window{0.0, 1.0, lo, hi}, false);
  };
  return a;
}

// u = phi(t) G, v = psi(t) - phi(t) G on the unscaled system, then U = u / b11, V = v / b12.
Ansatz build_g_branch(AnsatzId id, const DlvModel& md, const ParamMap& params) {
  if (md.m() != 2) throw DimensionError(label(id) + " needs a two-component model");
  const auto& b = md.b_exact();
  const Number l1 = md.lambda_exact()[0], l2 = md.lambda_exact()[1], a1 = md.a_exact()[0], a2 = md.a_exact()[1];
  if (l1 == l2) throw RestrictionError(label(id), "lambda1 != lambda2");
  Number r = l2 / l1;
  if (b[0][0].is_zero() || b[0][1].is_zero() || !(b[1][0] == r * b[0][0]) || !(b[1][1] == r * b[0][1])) {
    throw RestrictionError(label(id), "second coupling row = (lambda2/lambda1) first row, entries nonzero");
  }
  Number K = (l1 * a2 - l2 * a1) / (l1 - l2);
  AnsatzId want = K.is_zero() ? AnsatzId::A621 : (K.sign() > 0 ? AnsatzId::A619 : AnsatzId::A620);
  if (want != id) {
    throw RestrictionError(label(id), std::string("g-branch mismatch: kappa^2 = (lambda1 a2 - lambda2 a1)/(lambda1 - "
                                                  "lambda2) ") +
                                          (K.is_zero() ? "= 0 selects A621" : K.sign() > 0 ? "> 0 selects A619"
                                                                                           : "< 0 selects A620"));
  }
  const double al0 = get(params, "alpha0", 1.0), al1 = get(params, "alpha1", 1.0), al2 = get(params, "alpha2", 0.0);
  const double L1 = l1.value(), Kd = K.value(), kap = std::sqrt(std::fabs(Kd));
  Ansatz a;
  a.id = id;
  a.model = md;
  a.params = {{"alpha0", Number(al0)}, {"alpha1", Number(al1)}, {"alpha2", Number(al2)}, {"kappa2", abs(K)}};
  a.reduced = id == AnsatzId::A621 ? reduced_g_poly(a1.value(), L1, l2.value(), al2)
                                   : reduced_g_trig_exp(a1.value(), a2.value(), L1, l2.value(), al0);
  const double s0 = 1.0 / md.b(0, 0), s1 = 1.0 / md.b(0, 1);
  // G with lambda1 G_t = G_xx in every branch.
  auto G = [=](double t, double x, double& g, double& gt, double& gx, double& gxx) {
    if (id == AnsatzId::A619) {
      double H = std::exp(-kap * kap * t / L1), sn = std::sin(kap * x), cs = std::cos(kap * x);
      double osc = H * (al1 * sn + al2 * cs);
      g = al0 + osc;
      gt = -kap * kap / L1 * osc;
      gx = H * kap * (al1 * cs - al2 * sn);
      gxx = -kap * kap * osc;
    } else if (id == AnsatzId::A620) {
      double ep = al1 * std::exp(kap * kap * t / L1 + kap * x), em = al2 * std::exp(kap * kap * t / L1 - kap * x);
      g = al0 + ep + em;
      gt = kap * kap / L1 * (ep + em);
      gx = kap * (ep - em);
      gxx = kap * kap * (ep + em);
    } else {
      g = al0 + al1 * x + al2 * L1 * x * x + 2.0 * al2 * t;
      gt = 2.0 * al2;
      gx = al1 + 2.0 * al2 * L1 * x;
      gxx = 2.0 * al2 * L1;
    }
  };
  a.lift = [=](const Profile& p) {
    check_dim(p, 2, id);
    auto fn = p.fn;
    auto jetf = [=](double t, double x) {
      ProfilePoint pt = fn(t);
      double ph = pt.phi[0], ps = pt.phi[1], dph = pt.dphi[0], dps = pt.dphi[1];
      double g, gt, gx, gxx;
      G(t, x, g, gt, gx, gxx);
      double u = ph * g, ut = dph * g + ph * gt, ux = ph * gx, uxx = ph * gxx;
      JetPoint j = JetPoint::zeros(2, t, x);
      j.u = {s0 * u, s1 * (ps - u)};
      j.u_t = {s0 * ut, s1 * (dps - ut)};
      j.u_x = {s0 * ux, -s1 * ux};
      j.u_xx = {s0 * uxx, -s1 * uxx};
      return j;
    };
    Window w{p.lo, p.hi, -1.0, 1.0};
    if (id == AnsatzId::A619) w.x0 = 0.0, w.x1 = 2.0 * kPi / kap;
    if (id == AnsatzId::A620) w.x0 = -2.0 / kap, w.x1 = 2.0 / kap;
    const double lo = p.lo, hi = p.hi;
    return wrap_solution(ansatz_name(id) + " lift", md, jetf, [lo, hi](double t, double) { return t >= lo && t <= hi; },
                         w, false);
  };
  return a;
}

Ansatz build_a73(const DlvModel& md, const ParamMap& params) {
  const AnsatzId id = AnsatzId::A73;
  if (md.m() != 3) throw DimensionError(label(id) + " needs a three-component model");
  const auto& b = md.b_exact();
  for (int j = 0; j < 3; ++j) {
    if (b[0][j].is_zero() || !(b[1][j] == b[0][j]) || !(b[2][j] == b[0][j])) {
      throw RestrictionError(label(id), "all rows couple equally with nonzero coefficients (-b, -c, -e)");
    }
  }
  const auto& L = md.lambda_exact();
  const auto& A = md.a_exact();
  if (L[0] == L[1]) throw RestrictionError(label(id), "lambda1 != lambda2");
  if (!(L[2] == L[1])) throw RestrictionError(label(id), "lambda3 = lambda2");
  // (lambda2 - lambda3) a1 - (lambda1 - lambda3) a2 + (lambda1 - lambda2) a3 = 0
  if (!((L[1] - L[2]) * A[0] - (L[0] - L[2]) * A[1] + (L[0] - L[1]) * A[2]).is_zero()) {
    throw RestrictionError(label(id), "(lambda2-lambda3) a1 - (lambda1-lambda3) a2 + (lambda1-lambda2) a3 = 0");
  }
  Number delta = (A[0] - A[1]) / (L[0] - L[1]);
  if (delta.is_zero()) throw RestrictionError(label(id), "delta = (a1-a2)/(lambda1-lambda2) != 0");
  const double al = get(params, "alpha", 1.0);
  Ansatz a;
  a.id = id;
  a.model = md;
  a.params = {{"alpha", Number(al)}, {"delta", delta}};
  a.reduced = reduced_three_species(A[0].value(), A[1].value(), A[2].value(), L[0].value(), L[1].value());
  const double Bb = -md.b(0, 0), Cc = -md.b(0, 1), Ee = -md.b(0, 2), D = delta.value();
  const double kv = (al / D - 1.0) / Cc, kw = -al / (Ee * D);
  a.lift = [=](const Profile& p) {
    check_dim(p, 3, id);
    auto fn = p.fn;
    auto jetf = [=](double t, double x) {
      ProfilePoint pt = fn(x);
      const Vec &f = pt.phi, &d = pt.dphi, &dd = pt.ddphi;
      double E = std::exp(D * t);
      JetPoint j = JetPoint::zeros(3, t, x);
      j.u = {f[0] * E / Bb, f[1] / Cc + kv * f[0] * E, f[2] / Ee + kw * f[0] * E};
      j.u_t = {D * f[0] * E / Bb, D * kv * f[0] * E, D * kw * f[0] * E};
      j.u_x = {d[0] * E / Bb, d[1] / Cc + kv * d[0] * E, d[2] / Ee + kw * d[0] * E};
      j.u_xx = {dd[0] * E / Bb, dd[1] / Cc + kv * dd[0] * E, dd[2] / Ee + kw * dd[0] * E};
      return j;
    };
    const double lo = p.lo, hi = p.hi;
    return wrap_solution("A73 lift", md, jetf, [lo, hi](double, double x) { return x >= lo && x <= hi; },
                         Window{0.0, 1.0, lo, hi}, false);
  };
  return a;
}

}  // namespace

Ansatz build_ansatz(AnsatzId id, const DlvModel& model, const ParamMap& params) {
  switch (id) {
    case AnsatzId::TW:
      return build_tw(model, params);
    case AnsatzId::A64:
      return build_a64(model);
    case AnsatzId::A619:
    case AnsatzId::A620:
    case AnsatzId::A621:
      return build_g_branch(id, model, params);
    case AnsatzId::A73:
      return build_a73(model, params);
  }
  throw DlvError("unknown ansatz");
}

// ---------------------------------------------------------------------------
// Numerical integration

namespace {

struct Node {
  double w;
  Vec y;   // phi (order 1) or (phi, phi') (order 2)
  Vec dy;  // derivative of y
};

// Piecewise Hermite interpolant: quintic in phi for order 2 (phi, phi', phi'' at both ends),
// cubic for order 1.  The highest derivative is recomputed from the right-hand side.
ProfilePoint hermite_eval(const ReducedSystem& rs, const std::vector<Node>& nodes, double w) {
  const int n = rs.dim;
  auto it = std::upper_bound(nodes.begin(), nodes.end(), w, [](double v, const Node& nd) { return v < nd.w; });
  std::size_t k = it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
  if (k + 1 >= nodes.size()) k = nodes.size() >= 2 ? nodes.size() - 2 : 0;
  ProfilePoint pt{zeros(n), zeros(n), zeros(n)};
  if (nodes.size() == 1) {
    const Node& a = nodes[0];
    for (int i = 0; i < n; ++i) pt.phi[i] = a.y[i];
  } else {
    const Node &a = nodes[k], &b = nodes[k + 1];
    const double h = b.w - a.w, s = (w - a.w) / h;
    for (int i = 0; i < n; ++i) {
      double dy = b.y[i] - a.y[i];
      if (rs.order == 2) {
        double d0 = h * a.dy[i], d1 = h * b.dy[i], q0 = h * h * a.dy[n + i], q1 = h * h * b.dy[n + i];
        double c[6] = {a.y[i],
                       d0,
                       0.5 * q0,
                       10.0 * dy - 6.0 * d0 - 4.0 * d1 - 1.5 * q0 + 0.5 * q1,
                       -15.0 * dy + 8.0 * d0 + 7.0 * d1 + 1.5 * q0 - q1,
                       6.0 * dy - 3.0 * d0 - 3.0 * d1 - 0.5 * q0 + 0.5 * q1};
        double v = c[5], dv = 5.0 * c[5];
        for (int j = 4; j >= 0; --j) v = v * s + c[j];
        for (int j = 4; j >= 1; --j) dv = dv * s + j * c[j];
        pt.phi[i] = v;
        pt.dphi[i] = dv / h;
      } else {
        double d0 = h * a.dy[i], d1 = h * b.dy[i];
        double c[4] = {a.y[i], d0, 3.0 * dy - 2.0 * d0 - d1, -2.0 * dy + d0 + d1};
        pt.phi[i] = ((c[3] * s + c[2]) * s + c[1]) * s + c[0];
      }
    }
  }
  if (rs.order == 2) {
    pt.ddphi = rs.rhs(w, pt.phi, pt.dphi);
  } else {
    pt.dphi = rs.rhs(w, pt.phi, zeros(n));
  }
  return pt;
}

}  // namespace

Profile integrate_reduced(const ReducedSystem& rs, const Vec& init, double w0, double w1, const IntegrateOptions& opt) {
  namespace ode = boost::numeric::odeint;
  using State = std::vector<double>;
  const int n = rs.dim;
  const std::size_t N = static_cast<std::size_t>(rs.order * n);
  if (init.size() != N) {
    throw DimensionError("initial state needs " + std::to_string(N) + " values, got " + std::to_string(init.size()));
  }
  if (!(w1 != w0)) throw DlvError("integration interval is empty");
  if (!(opt.tol > 0.0)) throw DlvError("integration tolerance must be positive");

  auto sys = [&rs, n](const State& y, State& dy, double w) {
    dy.resize(y.size());
    if (rs.order == 2) {
      Vec phi(y.begin(), y.begin() + n), d(y.begin() + n, y.end());
      Vec dd = rs.rhs(w, phi, d);
      for (int i = 0; i < n; ++i) {
        dy[i] = d[i];
        dy[n + i] = dd[i];
      }
    } else {
      dy = rs.rhs(w, y, zeros(n));
    }
  };
  auto bad = [&opt](const State& y) {
    return std::any_of(y.begin(), y.end(), [&](double v) { return !std::isfinite(v) || std::fabs(v) > opt.max_abs; });
  };

  const double dir = w1 > w0 ? 1.0 : -1.0, span = std::fabs(w1 - w0);
  std::vector<Node> nodes;
  State y = init, dy;
  double w = w0;
  sys(y, dy, w);
  nodes.push_back({w, y, dy});
  std::string diag;

  if (opt.fixed_step > 0.0) {
    ode::runge_kutta4<State> rk;
    const long steps = static_cast<long>(std::ceil(span / opt.fixed_step - 1e-9));
    for (long k = 1; k <= steps; ++k) {
      double wn = k == steps ? w1 : w0 + dir * opt.fixed_step * static_cast<double>(k);
      State yn = y;
      rk.do_step(sys, yn, w, wn - w);
      if (bad(yn)) {
        diag = "solution left the finite range near omega = " + format_double(wn);
        break;
      }
      y = yn;
      w = wn;
      sys(y, dy, w);
      nodes.push_back({w, y, dy});
    }
  } else {
    auto stepper = ode::make_controlled(opt.tol, opt.tol, ode::runge_kutta_dopri5<State>());
    double h = dir * std::min(1e-3, span / 16.0);
    const long max_steps = 2000000;
    long count = 0;
    while (dir * (w1 - w) > 1e-14 * (1.0 + std::fabs(w1))) {
      if (++count > max_steps) {
        diag = "step limit reached at omega = " + format_double(w);
        break;
      }
      if (dir * (w + h - w1) > 0.0) h = w1 - w;
      if (std::fabs(h) < 1e-13 * std::max(1.0, std::fabs(w))) {
        diag = "step size underflow at omega = " + format_double(w);
        break;
      }
      State yn = y;
      double wn = w;
      auto res = stepper.try_step(sys, yn, wn, h);
      if (res == ode::fail) continue;
      if (bad(yn)) {
        diag = "solution left the finite range near omega = " + format_double(wn);
        break;
      }
      y = yn;
      w = wn;
      sys(y, dy, w);
      nodes.push_back({w, y, dy});
    }
  }

  if (dir < 0.0) std::reverse(nodes.begin(), nodes.end());
  Profile p;
  p.dim = n;
  p.lo = nodes.front().w;
  p.hi = nodes.back().w;
  p.interpolated = true;
  p.partial = !diag.empty();
  p.diagnostic = diag;
  auto shared = std::make_shared<std::vector<Node>>(std::move(nodes));
  p.fn = [rs, shared](double wq) { return hermite_eval(rs, *shared, wq); };
  return p;
}

// ---------------------------------------------------------------------------

ConsistencyReport consistency_check(const Ansatz& ans, const Profile& p, const Window& grid, int n) {
  ConsistencyReport rep;
  ClosedFormSolution sol = ans.lift(p);
  for (double t : linspace(grid.t0, grid.t1, n)) {
    for (double x : linspace(grid.x0, grid.x1, n)) {
      if (!sol.valid(t, x)) continue;
      rep.pde_residual = std::max(rep.pde_residual, scaled_residual(sol.model, jet(sol, t, x)));
      ++rep.points;
    }
  }
  for (double w : linspace(p.lo, p.hi, n)) {
    for (double r : reduced_residual(ans.reduced, p, w)) rep.reduced_residual = std::max(rep.reduced_residual, std::fabs(r));
  }
  if (p.interpolated) {
    const double h = 1e-4 * (p.hi - p.lo);
    for (double w : linspace(p.lo + 2 * h, p.hi - 2 * h, n)) {
      ProfilePoint a = p.eval(w - h), b = p.eval(w + h), c = p.eval(w);
      for (int i = 0; i < p.dim; ++i) {
        double fd = (b.phi[i] - a.phi[i]) / (2.0 * h);
        rep.interpolation_error = std::max(rep.interpolation_error, std::fabs(fd - c.dphi[i]));
      }
    }
  }
  const double C = 100.0;
  rep.consistent = rep.points > 0 && rep.pde_residual <= C * (rep.reduced_residual + rep.interpolation_error) + 1e-12;
  return rep;
}

// ---------------------------------------------------------------------------
// Closed-form profiles

Profile tanh_profile(const TanhForm& f) {
  Profile p;
  p.dim = static_cast<int>(f.A.size());
  if (f.coth) {
    p.lo = 0.5 / std::fabs(f.mu);
    p.hi = p.lo + 10.0 / std::fabs(f.mu);
  } else {
    p.lo = -5.0;
    p.hi = 5.0;
  }
  TanhForm g = f;
  g.alpha = 0.0;
  p.fn = [g](double w) {
    JetPoint j = tanh_form_jet(g, 0.0, w);
    return ProfilePoint{j.u, j.u_x, j.u_xx};
  };
  return p;
}

Profile equal_coupling_linear_profile(double a1, double a2, double l1, double l2, double C1, double C2) {
  if (near(l1, l2) || near(a1, a2)) throw RestrictionError("linear profile", "a1 != a2, lambda1 != lambda2");
  const double beta = (a1 - a2) / (l1 - l2), s = std::sqrt(std::fabs(beta * l1));
  const bool trig = beta < 0.0;
  Profile p;
  p.dim = 2;
  if (trig) {
    p.lo = 0.0;
    p.hi = 2.0 * kPi / s;
  } else {
    p.lo = -2.0 / s;
    p.hi = 2.0 / s;
  }
  p.fn = [=](double x) {
    double v, d, dd;
    if (trig) {
      double c = std::cos(s * x), sn = std::sin(s * x);
      v = C1 * c + C2 * sn;
      d = s * (-C1 * sn + C2 * c);
      dd = -s * s * v;
    } else {
      double ep = std::exp(s * x), em = std::exp(-s * x);
      v = C1 * ep + C2 * em;
      d = s * (C1 * ep - C2 * em);
      dd = s * s * v;
    }
    return ProfilePoint{{-a1, v}, {0.0, d}, {0.0, dd}};
  };
  return p;
}

Profile equal_coupling_sech_profile(double a1, double a2, double C1, double C2, bool cubic_sinh) {
  if (!(a1 > a2)) throw RestrictionError("sech profile", "a1 > a2");
  const double k = std::sqrt(a1 - a2) / 2.0, amp = 1.5 * (a1 - a2);
  Profile p;
  p.dim = 2;
  if (cubic_sinh) {
    p.lo = 0.5;
    p.hi = 3.0;
  } else {
    p.lo = -3.0;
    p.hi = 3.0;
  }
  p.fn = [=](double x) {
    double ch = std::cosh(k * x), sh = std::sinh(k * x), T = std::tanh(k * x);
    double psi = amp / (ch * ch);
    double f, fx, fxx, I;
    if (cubic_sinh) {
      f = sh * ch * ch * ch;
      fx = k * (ch * ch * ch * ch + 3.0 * sh * sh * ch * ch);
      fxx = k * k * sh * ch * (10.0 * ch * ch + 6.0 * sh * sh);
      I = integrate(
          [k](double y) {
            double c = std::cosh(k * y), s = std::sinh(k * y);
            double g = s * c * c * c;
            return 1.0 / (g * g);
          },
          1.0, x);
    } else {
      f = ch * ch * ch;
      fx = 3.0 * k * ch * ch * sh;
      fxx = 3.0 * k * k * (2.0 * ch * sh * sh + ch * ch * ch);
      double T3 = T * T * T;
      I = (T - 2.0 * T3 / 3.0 + T3 * T * T / 5.0) / k;
    }
    double c = C1 + C2 * I;
    // phi1 from its own ODE: (psi - a1)'' = -psi^2 + (a1 - a2) psi
    return ProfilePoint{{psi - a1, f * c},
                        {-2.0 * k * T * psi, fx * c + C2 / f},
                        {-psi * psi + (a1 - a2) * psi, fxx * c}};
  };
  return p;
}

Profile g_branch_profile(double a1, double a2, double l1, double l2, double alpha0, double C1, double C2,
                         double b) {
  if (near(l1, l2)) throw RestrictionError("g-branch profile", "lambda1 != lambda2");
  auto D = [=](double t) { return C1 + alpha0 * b * std::exp(a1 * t / l1) + C2 * l2 * std::exp(a2 * t / l2); };
  if (D(0.0) == 0.0) throw RestrictionError("g-branch profile", "C1 + alpha0 b + C2 lambda2 != 0");
  Profile p;
  p.dim = 2;
  p.lo = 0.0;
  p.hi = 2.0;
  const int n = 2000;
  for (int i = 1; i <= n; ++i) {
    double t = 2.0 * i / n;
    if (D(t) * D(0.0) <= 0.0) {
      p.hi = 0.9 * 2.0 * (i - 1) / n;
      break;
    }
  }
  p.fn = [=](double t) {
    double E1 = std::exp(a1 * t / l1), E2 = std::exp(a2 * t / l2);
    double d = D(t), dt = alpha0 * b * (a1 / l1) * E1 + C2 * a2 * E2;
    double N1 = -b * a1 * E1, N1t = N1 * a1 / l1;
    double N2 = -(alpha0 * a1 * b * E1 + C2 * a2 * l1 * E2);
    double N2t = -(alpha0 * a1 * b * (a1 / l1) * E1 + C2 * a2 * l1 * (a2 / l2) * E2);
    double ph = N1 / d, ps = N2 / d;
    return ProfilePoint{{ph, ps}, {N1t / d - ph * dt / d, N2t / d - ps * dt / d}, {0.0, 0.0}};
  };
  return p;
}

Profile three_species_profile(double delta, double l2, double a2, double v0, double C1, double C2) {
  if (!(delta < 0.0)) throw RestrictionError("three-species profile", "delta < 0");
  const double s = std::sqrt(-delta * l2);
  Profile p;
  p.dim = 3;
  p.lo = 0.0;
  p.hi = kPi / s;
  p.fn = [=](double x) {
    double cs = std::cos(s * x), sn = std::sin(s * x);
    double f = C1 * cs + C2 * sn;
    return ProfilePoint{{f, v0, a2 - v0}, {s * (-C1 * sn + C2 * cs), 0.0, 0.0}, {-s * s * f, 0.0, 0.0}};
  };
  return p;
}

void write_profile_csv(std::ostream& os, const Profile& p, const std::vector<double>& omegas) {
  os << "omega";
  for (int i = 1; i <= p.dim; ++i) os << ",phi" << i << ",dphi" << i << ",ddphi" << i;
  os << '\n';
  for (double w : omegas) {
    ProfilePoint pt = p.eval(w);
    os << format_double(w);
    for (int i = 0; i < p.dim; ++i) {
      os << ',' << format_double(pt.phi[i]) << ',' << format_double(pt.dphi[i]) << ',' << format_double(pt.ddphi[i]);
    }
    os << '\n';
  }
}

ReductionTriple reduction_triple(const ClosedFormSolution& sol) {
  const auto P = [&](const char* k) { return sol.params.at(k).value(); };
  const std::string& id = sol.id;
  if (sol.tanh_form) {
    auto an = build_ansatz(AnsatzId::TW, sol.model, {{"alpha", Number(sol.tanh_form->alpha)}});
    return {id, sol, an, tanh_profile(*sol.tanh_form)};
  }
  if (id == "CD11_TRIG" || id == "CD11_EXP" || id == "CD11_COMP") {
    const double C1 = id == "CD11_COMP" ? 0.0 : P("C1");
    return {id, sol, build_ansatz(AnsatzId::A64, sol.model),
            equal_coupling_linear_profile(P("a1"), P("a2"), P("lambda1"), P("lambda2"), C1, P("C2"))};
  }
  if (id == "CD11_TANH2" || id == "CD11_TANH3") {
    return {id, sol, build_ansatz(AnsatzId::A64, sol.model),
            equal_coupling_sech_profile(P("a1"), P("a2"), P("C1"), P("C2"), id == "CD11_TANH3")};
  }
  if (id == "CD21_CASE1") {
    const auto& p = sol.params;
    auto an = build_ansatz(AnsatzId::A619, sol.model,
                           {{"alpha0", p.at("alpha0")}, {"alpha1", p.at("alpha1")}, {"alpha2", p.at("alpha2")}});
    const double b = p.count("b") ? P("b") : -1.0;
    std::string label = p.count("b") ? id + "(b=" + p.at("b").str() + ",c=" + p.at("c").str() + ")" : id;
    return {label, sol, an,
            g_branch_profile(P("a1"), P("a2"), P("lambda1"), P("lambda2"), P("alpha0"), P("C1"), P("C2"), b)};
  }
  if (id == "CD13_3COMP") {
    auto an = build_ansatz(AnsatzId::A73, sol.model, {{"alpha", sol.params.at("alpha")}});
    return {id, sol, an,
            three_species_profile(sol.derived.at("delta").value(), P("lambda2"), P("a2"), P("v0"), P("C1"), P("C2"))};
  }
  throw UnsupportedError("no reduction registered for " + id);
}

std::vector<ReductionTriple> reduction_triples() {
  std::vector<ReductionTriple> out;
  for (const auto& e : catalog()) {
    if (e.id.rfind("HK_", 0) == 0) continue;
    out.push_back(reduction_triple(instantiate(e.id)));
  }
  out.push_back(reduction_triple(instantiate("CD21_CASE1", {{"b", Number(3, 2)}, {"c", 3}})));
  return out;
}

double lift_difference(const ClosedFormSolution& a, const ClosedFormSolution& b, int n) {
  const Window& w = b.window;
  double d = 0.0;
  int used = 0;
  for (double t : linspace(w.t0, w.t1, n)) {
    for (double x : linspace(w.x0, w.x1, n)) {
      if (!a.valid(t, x) || !b.valid(t, x)) continue;
      const Vec ua = eval(a, t, x), ub = eval(b, t, x);
      for (std::size_t i = 0; i < ua.size(); ++i) d = std::max(d, std::abs(ua[i] - ub[i]) / (1.0 + std::abs(ub[i])));
      ++used;
    }
  }
  return used ? d : -1.0;
}

}  // namespace dlv
