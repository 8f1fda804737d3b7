#include "dlv/symmetry.hpp"

#include <cmath>
#include <memory>

#include "dlv/errors.hpp"

namespace dlv {

namespace {

bool eq(const Number& a, const Number& b) { return near_equal(a, b, 1e-12); }
bool zero(const Number& a) { return eq(a, Number(0)); }

const Number& lam(const DlvModel& md, int i) { return md.lambda_exact()[i]; }
const Number& ra(const DlvModel& md, int i) { return md.a_exact()[i]; }
const Number& rb(const DlvModel& md, int i, int j) { return md.b_exact()[i][j]; }

bool all_lambda_distinct(const DlvModel& md) {
  for (int i = 0; i < md.m(); ++i) {
    for (int j = i + 1; j < md.m(); ++j) {
      if (eq(lam(md, i), lam(md, j))) return false;
    }
  }
  return true;
}

std::vector<double> to_double(const std::vector<Number>& v) {
  std::vector<double> out;
  for (const auto& n : v) out.push_back(n.value());
  return out;
}

// Operator given in normalized variables U = s .* u; returns its form in u.
SymmetryOperator::CoeffFn rescaled(SymmetryOperator::CoeffFn normalized, std::vector<double> s) {
  return [normalized = std::move(normalized), s = std::move(s)](double t, double x, const Vec& u) {
    Vec U(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) U[i] = s[i] * u[i];
    OperatorCoeffs c = normalized(t, x, U);
    for (std::size_t i = 0; i < u.size(); ++i) c.eta[i] /= s[i];
    return c;
  };
}

SymmetryOperator::DomainFn rescaled_domain(SymmetryOperator::DomainFn normalized, std::vector<double> s) {
  if (!normalized) return nullptr;
  return [normalized = std::move(normalized), s = std::move(s)](double t, double x, const Vec& u) {
    Vec U(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) U[i] = s[i] * u[i];
    return normalized(t, x, U);
  };
}

// --- flows --------------------------------------------------------------------------------

using JetMap = std::function<JetPoint(const ClosedFormSolution& base, double t, double x)>;

ClosedFormSolution transformed(const ClosedFormSolution& sol, const std::string& tag, JetMap jm,
                               std::function<bool(const ClosedFormSolution&, double, double)> valid, Window w,
                               bool keep_asymptote) {
  auto base = std::make_shared<const ClosedFormSolution>(sol);
  ClosedFormSolution out = wrap_solution(
      sol.id + "|" + tag, sol.model, [base, jm](double t, double x) { return jm(*base, t, x); },
      [base, valid](double t, double x) { return valid(*base, t, x); }, w, sol.autonomous);
  out.params = sol.params;
  out.derived = sol.derived;
  if (keep_asymptote) out.asymptote = sol.asymptote;
  return out;
}

ClosedFormSolution flow_shift(const ClosedFormSolution& sol, double dt, double dx, const std::string& tag) {
  Window w = sol.window;
  w.t0 += dt;
  w.t1 += dt;
  w.x0 += dx;
  w.x1 += dx;
  return transformed(
      sol, tag,
      [dt, dx](const ClosedFormSolution& b, double t, double x) {
        JetPoint j = jet(b, t - dt, x - dx);
        j.t = t;
        j.x = x;
        return j;
      },
      [dt, dx](const ClosedFormSolution& b, double t, double x) { return b.valid(t - dt, x - dx); }, w, true);
}

ClosedFormSolution flow_dilation(const ClosedFormSolution& sol, double eps) {
  const double s = std::exp(-eps);
  Window w = sol.window;
  w.t0 /= s * s;
  w.t1 /= s * s;
  w.x0 /= s;
  w.x1 /= s;
  return transformed(
      sol, "D(" + format_double(eps) + ")",
      [s](const ClosedFormSolution& b, double t, double x) {
        JetPoint j = jet(b, s * s * t, s * x);
        const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
        for (std::size_t i = 0; i < j.u.size(); ++i) {
          j.u[i] *= s2;
          j.u_t[i] *= s4;
          j.u_x[i] *= s3;
          j.u_xx[i] *= s4;
        }
        j.t = t;
        j.x = x;
        return j;
      },
      [s](const ClosedFormSolution& b, double t, double x) { return b.valid(s * s * t, s * x); }, w, false);
}

ClosedFormSolution flow_scale(const ClosedFormSolution& sol, int comp, double eps) {
  const double f = std::exp(eps);
  return transformed(
      sol, "scale" + std::to_string(comp + 1) + "(" + format_double(eps) + ")",
      [comp, f](const ClosedFormSolution& b, double t, double x) {
        JetPoint j = jet(b, t, x);
        j.u[comp] *= f;
        j.u_t[comp] *= f;
        j.u_x[comp] *= f;
        j.u_xx[comp] *= f;
        return j;
      },
      [](const ClosedFormSolution& b, double t, double x) { return b.valid(t, x); }, sol.window, false);
}

// v -> v + eps F where F(t, x) is built from the jet of u.
using AddFn = std::function<void(const JetPoint& j, double& F, double& Ft, double& Fx, double& Fxx)>;

ClosedFormSolution flow_add_v(const ClosedFormSolution& sol, double eps, const std::string& tag, AddFn add) {
  return transformed(
      sol, tag + "(" + format_double(eps) + ")",
      [eps, add](const ClosedFormSolution& b, double t, double x) {
        JetPoint j = jet(b, t, x);
        double F, Ft, Fx, Fxx;
        add(j, F, Ft, Fx, Fxx);
        j.u[1] += eps * F;
        j.u_t[1] += eps * Ft;
        j.u_x[1] += eps * Fx;
        j.u_xx[1] += eps * Fxx;
        return j;
      },
      [](const ClosedFormSolution& b, double t, double x) { return b.valid(t, x); }, sol.window, false);
}

OperatorCoeffs zero_coeffs(int m) {
  OperatorCoeffs c;
  c.eta.assign(m, 0.0);
  return c;
}

// --- two-component Lie classification ----------------------------------------------------

struct TwoComp {
  bool case1 = false, case2 = false, case3 = false, case4 = false, case5 = false;
};

TwoComp lie_cases(const DlvModel& md) {
  TwoComp c;
  if (md.m() != 2) return c;
  bool a0 = zero(ra(md, 0)) && zero(ra(md, 1));
  bool semi = zero(rb(md, 0, 1)) && zero(rb(md, 1, 1));
  c.case1 = a0;
  c.case2 = a0 && semi;
  c.case3 = zero(ra(md, 1)) && semi;
  c.case4 = eq(lam(md, 0), lam(md, 1)) && semi && eq(ra(md, 0), ra(md, 1)) && eq(rb(md, 0, 0), rb(md, 1, 0));
  c.case5 = c.case4 && zero(ra(md, 0));
  return c;
}

bool all_a_zero(const DlvModel& md) {
  for (int i = 0; i < md.m(); ++i) {
    if (!zero(ra(md, i))) return false;
  }
  return true;
}

SymmetryOperator scale_v_operator() {
  SymmetryOperator op;
  op.id = "v_dv";
  op.kind = OperatorKind::Lie;
  op.m = 2;
  op.family = "two-component Lie symmetries";
  op.applicability = "c1 = c2 = 0 and (a2 = 0, or lambda1 = lambda2, a1 = a2, b1 = b2)";
  op.formula = "v d_v";
  op.coeffs = [](double, double, const Vec& u) {
    OperatorCoeffs c = zero_coeffs(2);
    c.eta[1] = u[1];
    return c;
  };
  op.applies = [](const DlvModel& md) {
    auto c = lie_cases(md);
    return c.case2 || c.case3 || c.case4;
  };
  op.flow = [](double eps, const ClosedFormSolution& s) { return flow_scale(s, 1, eps); };
  return op;
}

SymmetryOperator u_dv_operator() {
  SymmetryOperator op;
  op.id = "u_dv";
  op.kind = OperatorKind::Lie;
  op.m = 2;
  op.family = "two-component Lie symmetries";
  op.applicability = "lambda1 = lambda2, c1 = c2 = 0, a1 = a2, b1 = b2";
  op.formula = "u d_v";
  op.coeffs = [](double, double, const Vec& u) {
    OperatorCoeffs c = zero_coeffs(2);
    c.eta[1] = u[0];
    return c;
  };
  op.applies = [](const DlvModel& md) { return lie_cases(md).case4; };
  op.flow = [](double eps, const ClosedFormSolution& s) {
    return flow_add_v(s, eps, "u_dv", [](const JetPoint& j, double& F, double& Ft, double& Fx, double& Fxx) {
      F = j.u[0];
      Ft = j.u_t[0];
      Fx = j.u_x[0];
      Fxx = j.u_xx[0];
    });
  };
  return op;
}

SymmetryOperator exp_dv_operator(const DlvModel& md) {
  const double a1 = md.a(0), b1 = md.b(0, 0), L = md.lambda(0);
  SymmetryOperator op;
  op.id = "E_dv";
  op.kind = OperatorKind::Lie;
  op.m = 2;
  op.family = "two-component Lie symmetries";
  op.applicability = "lambda1 = lambda2 = lambda, c1 = c2 = 0, a1 = a2 != 0, b1 = b2";
  op.formula = "(a1 + b1 u) exp(a1 t / lambda) d_v";
  op.params = {{"a1", ra(md, 0)}, {"b1", rb(md, 0, 0)}, {"lambda", lam(md, 0)}};
  op.coeffs = [=](double t, double, const Vec& u) {
    OperatorCoeffs c = zero_coeffs(2);
    c.eta[1] = (a1 + b1 * u[0]) * std::exp(a1 * t / L);
    return c;
  };
  op.applies = [](const DlvModel& m) { return lie_cases(m).case4 && !zero(ra(m, 0)); };
  op.flow = [](double eps, const ClosedFormSolution& s) {
    const double A = s.model.a(0), B = s.model.b(0, 0), Lm = s.model.lambda(0);
    return flow_add_v(s, eps, "E_dv", [=](const JetPoint& j, double& F, double& Ft, double& Fx, double& Fxx) {
      double E = std::exp(A * j.t / Lm);
      F = (A + B * j.u[0]) * E;
      Ft = B * j.u_t[0] * E + (A / Lm) * F;
      Fx = B * j.u_x[0] * E;
      Fxx = B * j.u_xx[0] * E;
    });
  };
  return op;
}

SymmetryOperator r_operator(const DlvModel& md) {
  const double b1 = md.b(0, 0), L = md.lambda(0);
  SymmetryOperator op;
  op.id = "R";
  op.kind = OperatorKind::Lie;
  op.m = 2;
  op.family = "two-component Lie symmetries";
  op.applicability = "lambda1 = lambda2 = lambda, a = 0, c1 = c2 = 0, b1 = b2";
  op.formula = "(1 + (b1/lambda) t u) d_v";
  op.params = {{"b1", rb(md, 0, 0)}, {"lambda", lam(md, 0)}};
  op.coeffs = [=](double t, double, const Vec& u) {
    OperatorCoeffs c = zero_coeffs(2);
    c.eta[1] = 1.0 + (b1 / L) * t * u[0];
    return c;
  };
  op.applies = [](const DlvModel& m) { return lie_cases(m).case5; };
  op.flow = [](double eps, const ClosedFormSolution& s) {
    const double B = s.model.b(0, 0), Lm = s.model.lambda(0);
    return flow_add_v(s, eps, "R", [=](const JetPoint& j, double& F, double& Ft, double& Fx, double& Fxx) {
      double k = B / Lm;
      F = 1.0 + k * j.t * j.u[0];
      Ft = k * (j.u[0] + j.t * j.u_t[0]);
      Fx = k * j.t * j.u_x[0];
      Fxx = k * j.t * j.u_xx[0];
    });
  };
  return op;
}

// --- equal-coupling two-component system (Q-conditional, xi0 != 0) -------------------------

std::optional<std::vector<double>> equal_coupling_scales(const DlvModel& md) {
  if (md.m() != 2 || eq(lam(md, 0), lam(md, 1))) return std::nullopt;
  auto s = column_scales(md, {1, 1});
  if (!s) return std::nullopt;
  return to_double(*s);
}

SymmetryOperator make_qc(const std::string& id, const std::string& formula, const std::string& applicability,
                         std::vector<double> s, std::function<void(double t, const Vec& U, double& xi0, double& f)> nf,
                         SymmetryOperator::DomainFn dom = nullptr) {
  SymmetryOperator op;
  op.id = id;
  op.kind = OperatorKind::QConditional;
  op.m = 2;
  op.family = "two-component equal-coupling Q-conditional symmetries";
  op.applicability = applicability;
  op.formula = formula;
  // normalized form: xi0 d_t + f (d_U - d_V)
  op.coeffs = rescaled(
      [nf](double t, double, const Vec& U) {
        OperatorCoeffs c = zero_coeffs(2);
        double f;
        nf(t, U, c.xi0, f);
        c.eta[0] = f;
        c.eta[1] = -f;
        return c;
      },
      s);
  op.domain = rescaled_domain(std::move(dom), s);
  return op;
}

void add_equal_coupling(std::vector<SymmetryOperator>& out, const DlvModel& md, const OperatorParams& prm) {
  auto sc = equal_coupling_scales(md);
  if (!sc) return;
  const auto& s = *sc;
  const double l1 = md.lambda(0), l2 = md.lambda(1), a1 = md.a(0), a2 = md.a(1), dl = l1 - l2;
  const std::string base = "lambda1 != lambda2, b1 = b2, c1 = c2, b c != 0";
  auto tag = [](SymmetryOperator op, std::function<bool(const DlvModel&)> ap) {
    op.applies = std::move(ap);
    return op;
  };
  auto sys = [](const DlvModel& m) { return equal_coupling_scales(m).has_value(); };

  if (!eq(ra(md, 0), ra(md, 1))) {
    auto ap = [sys](const DlvModel& m) { return sys(m) && !eq(ra(m, 0), ra(m, 1)); };
    if (!zero(ra(md, 0)) && !zero(ra(md, 1))) {
      out.push_back(tag(equal_coupling_affine(md), ap));
    }
    out.push_back(tag(make_qc("QC1_2", "(lambda1-lambda2) d_t + (a1-a2) u (d_u - d_v)", base + ", a1 != a2", s,
                              [=](double, const Vec& U, double& xi0, double& f) {
                                xi0 = dl;
                                f = (a1 - a2) * U[0];
                              }),
                      ap));
    out.push_back(tag(make_qc("QC1_3", "(lambda1-lambda2) d_t - (a1-a2) v (d_u - d_v)", base + ", a1 != a2", s,
                              [=](double, const Vec& U, double& xi0, double& f) {
                                xi0 = dl;
                                f = -(a1 - a2) * U[1];
                              }),
                      ap));
  } else {
    auto ap = [sys](const DlvModel& m) { return sys(m) && eq(ra(m, 0), ra(m, 1)); };
    const double a = a1;
    if (!zero(ra(md, 0))) {
      out.push_back(tag(make_qc("QC2_1", "(lambda1-lambda2) d_t - a (v + u + a)(d_u - d_v)", base + ", a1 = a2 = a != 0",
                                s,
                                [=](double, const Vec& U, double& xi0, double& f) {
                                  xi0 = dl;
                                  f = -a * (U[1] + U[0] + a);
                                }),
                        ap));
    }
    out.push_back(tag(make_qc("QC2_2", "(lambda1-lambda2) t d_t - (lambda1 v + lambda2 u)(d_u - d_v)",
                              base + ", a1 = a2", s,
                              [=](double t, const Vec& U, double& xi0, double& f) {
                                xi0 = dl * t;
                                f = -(l1 * U[1] + l2 * U[0]);
                              }),
                      ap));
  }

  // a1 = a lambda1, a2 = a lambda2 with a != 0
  Number ar = ra(md, 0) / lam(md, 0);
  if (!zero(ar) && eq(ar, ra(md, 1) / lam(md, 1))) {
    auto ap = [sys](const DlvModel& m) {
      Number r = ra(m, 0) / lam(m, 0);
      return sys(m) && !zero(r) && eq(r, ra(m, 1) / lam(m, 1));
    };
    const double a = ar.value();
    const std::string app = base + ", a1 = a lambda1, a2 = a lambda2, a != 0";
    out.push_back(tag(make_qc("QC3_1", "(lambda1-lambda2) d_t - a (lambda1 v + lambda2 u + a lambda1 lambda2)(d_u - d_v)",
                              app, s,
                              [=](double, const Vec& U, double& xi0, double& f) {
                                xi0 = dl;
                                f = -a * (l1 * U[1] + l2 * U[0] + a * l1 * l2);
                              }),
                      ap));
    out.push_back(tag(make_qc("QC3_2", "d_t + a u (d_u - d_v)", app, s,
                              [=](double, const Vec& U, double& xi0, double& f) {
                                xi0 = 1.0;
                                f = a * U[0];
                              }),
                      ap));
    out.push_back(tag(make_qc("QC3_3", "d_t - a v (d_u - d_v)", app, s,
                              [=](double, const Vec& U, double& xi0, double& f) {
                                xi0 = 1.0;
                                f = -a * U[1];
                              }),
                      ap));
    const double al = prm.alpha;
    if (al != 0.0) {
      auto op = make_qc(
          "QC3_4", "d_t + a alpha (lambda1 v + lambda2 u + a lambda1 lambda2)/(exp(-a t) - alpha (lambda1-lambda2)) (d_u - d_v)",
          app + ", alpha != 0", s,
          [=](double t, const Vec& U, double& xi0, double& f) {
            xi0 = 1.0;
            f = a * al * (l1 * U[1] + l2 * U[0] + a * l1 * l2) / (std::exp(-a * t) - al * dl);
          },
          [=](double t, double, const Vec&) {
            double den = std::exp(-a * t) - al * dl;
            return std::fabs(den) > 1e-10 * (std::exp(-a * t) + std::fabs(al * dl));
          });
      op.params = {{"alpha", al}};
      out.push_back(tag(op, ap));
    }
  }
}

// --- weighted-coupling two-component system (first type, xi0 = 0) --------------------------

std::optional<std::vector<double>> weighted_scales(const DlvModel& md) {
  if (md.m() != 2 || eq(lam(md, 0), lam(md, 1))) return std::nullopt;
  auto s = column_scales(md, {1, lam(md, 1) / lam(md, 0)});
  if (!s) return std::nullopt;
  return to_double(*s);
}

// --- three-component all-ones system ------------------------------------------------------

std::optional<std::vector<double>> ones3_scales(const DlvModel& md) {
  if (md.m() != 3) return std::nullopt;
  auto s = column_scales(md, {1, 1, 1});
  if (!s) return std::nullopt;
  return to_double(*s);
}

bool case4_equality(const DlvModel& md) {
  Number v = (lam(md, 1) - lam(md, 2)) * ra(md, 0) - (lam(md, 0) - lam(md, 2)) * ra(md, 1) +
             (lam(md, 0) - lam(md, 1)) * ra(md, 2);
  return zero(v);
}

bool case3_equality(const DlvModel& md) {
  Number v = (lam(md, 1) - lam(md, 2)) * ra(md, 0) - lam(md, 1) * ra(md, 2) + lam(md, 2) * ra(md, 1);
  return zero(v);
}

bool case2_inequality(const DlvModel& md) { return !(eq(ra(md, 0), ra(md, 1)) && eq(ra(md, 0), ra(md, 2))); }

struct Q4Shape {
  int c, p, q, i, j, ap, am;
};
constexpr Q4Shape kQ4[6] = {{0, 0, 1, 0, 1, 1, 2}, {1, 1, 0, 0, 1, 0, 2}, {0, 0, 2, 0, 2, 1, 2},
                            {2, 2, 0, 0, 2, 0, 1}, {1, 1, 2, 1, 2, 0, 2}, {2, 2, 1, 1, 2, 0, 1}};
const char* kQ4Formula[6] = {
    "d_t + (a1-a2)/(lambda1-lambda2) u (d_u - d_v) + alpha u (d_v - d_w)",
    "d_t + (a1-a2)/(lambda1-lambda2) v (d_v - d_u) + alpha v (d_u - d_w)",
    "d_t + (a1-a3)/(lambda1-lambda3) u (d_u - d_w) + alpha u (d_v - d_w)",
    "d_t + (a1-a3)/(lambda1-lambda3) w (d_w - d_u) + alpha w (d_u - d_v)",
    "d_t + (a2-a3)/(lambda2-lambda3) v (d_v - d_w) + alpha v (d_u - d_w)",
    "d_t + (a2-a3)/(lambda2-lambda3) w (d_w - d_v) + alpha w (d_u - d_v)"};

}  // namespace

// -----------------------------------------------------------------------------------------

std::string kind_name(OperatorKind k) {
  switch (k) {
    case OperatorKind::Lie:
      return "Lie";
    case OperatorKind::QConditional:
      return "QConditional";
    case OperatorKind::QConditionalFirstType:
      return "QConditionalFirstType";
  }
  return "?";
}

OperatorCoeffs SymmetryOperator::eval(double t, double x, const Vec& u) const {
  if (static_cast<int>(u.size()) != m) throw DimensionError("operator " + id + ": state has wrong size");
  return coeffs(t, x, u);
}

std::optional<std::vector<Number>> column_scales(const DlvModel& model, const std::vector<Number>& w) {
  const int m = model.m();
  if (static_cast<int>(w.size()) != m || zero(w[0])) return std::nullopt;
  std::vector<Number> s(m);
  for (int j = 0; j < m; ++j) {
    s[j] = rb(model, 0, j) / w[0];
    if (zero(s[j])) return std::nullopt;
  }
  for (int i = 1; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!eq(rb(model, i, j), w[i] * s[j])) return std::nullopt;
    }
  }
  return s;
}

SymmetryOperator translation_t(int m) {
  SymmetryOperator op;
  op.id = "P_t";
  op.m = m;
  op.family = "translations";
  op.applicability = "always";
  op.formula = "d_t";
  op.coeffs = [m](double, double, const Vec&) {
    OperatorCoeffs c = zero_coeffs(m);
    c.xi0 = 1.0;
    return c;
  };
  op.applies = [](const DlvModel&) { return true; };
  op.flow = [](double eps, const ClosedFormSolution& s) {
    return flow_shift(s, eps, 0.0, "P_t(" + format_double(eps) + ")");
  };
  return op;
}

SymmetryOperator translation_x(int m) {
  SymmetryOperator op;
  op.id = "P_x";
  op.m = m;
  op.family = "translations";
  op.applicability = "always";
  op.formula = "d_x";
  op.coeffs = [m](double, double, const Vec&) {
    OperatorCoeffs c = zero_coeffs(m);
    c.xi1 = 1.0;
    return c;
  };
  op.applies = [](const DlvModel&) { return true; };
  op.flow = [](double eps, const ClosedFormSolution& s) {
    return flow_shift(s, 0.0, eps, "P_x(" + format_double(eps) + ")");
  };
  return op;
}

SymmetryOperator dilation(int m) {
  SymmetryOperator op;
  op.id = "D";
  op.m = m;
  op.family = m == 2 ? "two-component Lie symmetries" : "Lie symmetries, purely quadratic reaction";
  op.applicability = "all a_i = 0";
  op.formula = "2t d_t + x d_x - 2 sum_i u_i d_{u_i}";
  op.coeffs = [m](double t, double x, const Vec& u) {
    OperatorCoeffs c = zero_coeffs(m);
    c.xi0 = 2.0 * t;
    c.xi1 = x;
    for (int i = 0; i < m; ++i) c.eta[i] = -2.0 * u[i];
    return c;
  };
  op.applies = [m](const DlvModel& md) { return md.m() == m && all_a_zero(md); };
  op.flow = [](double eps, const ClosedFormSolution& s) { return flow_dilation(s, eps); };
  return op;
}

SymmetryOperator front_operator(int m, double alpha) {
  SymmetryOperator op;
  op.id = "P_t+alpha*P_x";
  op.m = m;
  op.family = "translations";
  op.applicability = "always";
  op.formula = "d_t + alpha d_x";
  op.params = {{"alpha", alpha}};
  op.coeffs = [m, alpha](double, double, const Vec&) {
    OperatorCoeffs c = zero_coeffs(m);
    c.xi0 = 1.0;
    c.xi1 = alpha;
    return c;
  };
  op.applies = [](const DlvModel&) { return true; };
  op.flow = [alpha](double eps, const ClosedFormSolution& s) {
    return flow_shift(s, eps, alpha * eps, "P_t+alpha*P_x(" + format_double(eps) + ")");
  };
  return op;
}

SymmetryOperator equal_coupling_affine(const DlvModel& md) {
  auto sc = equal_coupling_scales(md);
  if (!sc) throw RestrictionError("QC1_1", "two components, lambda1 != lambda2, b1 = b2, c1 = c2, b c != 0");
  if (eq(ra(md, 0), ra(md, 1))) throw RestrictionError("QC1_1", "a1 != a2");
  if (zero(ra(md, 0)) || zero(ra(md, 1))) throw RestrictionError("QC1_1", "a1 a2 != 0");
  const double dl = md.lambda(0) - md.lambda(1), a1 = md.a(0), a2 = md.a(1);
  auto op = make_qc("QC1_1", "(lambda1-lambda2) d_t - (a1 v + a2 u + a1 a2)(d_u - d_v)",
                    "lambda1 != lambda2, b1 = b2, c1 = c2, b c != 0, a1 != a2, a1 a2 != 0", *sc,
                    [=](double, const Vec& U, double& xi0, double& f) {
                      xi0 = dl;
                      f = -(a1 * U[1] + a2 * U[0] + a1 * a2);
                    });
  op.applies = [](const DlvModel& m) {
    return equal_coupling_scales(m).has_value() && !eq(ra(m, 0), ra(m, 1)) && !zero(ra(m, 0)) && !zero(ra(m, 1));
  };
  return op;
}

std::string branch_name(GFunction::Branch b) {
  switch (b) {
    case GFunction::Branch::Trig:
      return "trig";
    case GFunction::Branch::Exp:
      return "exp";
    case GFunction::Branch::Poly:
      return "poly";
  }
  return "?";
}

double GFunction::g(double t, double x) const {
  switch (branch) {
    case Branch::Trig:
      return alpha0 * std::exp(kappa * kappa * t / lambda) + alpha1 * std::sin(kappa * x) + alpha2 * std::cos(kappa * x);
    case Branch::Exp:
      return alpha0 * std::exp(-kappa * kappa * t / lambda) + alpha1 * std::exp(kappa * x) +
             alpha2 * std::exp(-kappa * x);
    case Branch::Poly:
      return alpha0 + alpha1 * x + alpha2 * lambda * x * x + 2.0 * alpha2 * t;
  }
  return 0.0;
}

double GFunction::g_t(double t, double) const {
  switch (branch) {
    case Branch::Trig:
      return alpha0 * kappa * kappa / lambda * std::exp(kappa * kappa * t / lambda);
    case Branch::Exp:
      return -alpha0 * kappa * kappa / lambda * std::exp(-kappa * kappa * t / lambda);
    case Branch::Poly:
      return 2.0 * alpha2;
  }
  return 0.0;
}

double GFunction::g_x(double, double x) const {
  switch (branch) {
    case Branch::Trig:
      return kappa * (alpha1 * std::cos(kappa * x) - alpha2 * std::sin(kappa * x));
    case Branch::Exp:
      return kappa * (alpha1 * std::exp(kappa * x) - alpha2 * std::exp(-kappa * x));
    case Branch::Poly:
      return alpha1 + 2.0 * alpha2 * lambda * x;
  }
  return 0.0;
}

double GFunction::g_xx(double, double x) const {
  switch (branch) {
    case Branch::Trig:
      return -kappa * kappa * (alpha1 * std::sin(kappa * x) + alpha2 * std::cos(kappa * x));
    case Branch::Exp:
      return kappa * kappa * (alpha1 * std::exp(kappa * x) + alpha2 * std::exp(-kappa * x));
    case Branch::Poly:
      return 2.0 * alpha2 * lambda;
  }
  return 0.0;
}

std::pair<GFunction, GFunction> g_function(const DlvModel& md, double alpha0, double alpha1, double alpha2) {
  if (md.m() != 2) throw DimensionError("g-functions need a two-component model");
  if (eq(lam(md, 0), lam(md, 1))) throw RestrictionError("g_function", "lambda1 != lambda2");
  if (!weighted_scales(md)) {
    throw RestrictionError("g_function", "second row equals lambda2/lambda1 times the first, entries nonzero");
  }
  Number num = lam(md, 0) * ra(md, 1) - lam(md, 1) * ra(md, 0);
  Number K = num / (lam(md, 0) - lam(md, 1));
  GFunction g;
  g.alpha0 = alpha0;
  g.alpha1 = alpha1;
  g.alpha2 = alpha2;
  g.K = K.value();
  if (eq(lam(md, 0) * ra(md, 1), lam(md, 1) * ra(md, 0))) {
    g.branch = GFunction::Branch::Poly;
    g.K = 0.0;
  } else {
    g.branch = K.sign() > 0 ? GFunction::Branch::Trig : GFunction::Branch::Exp;
    g.kappa = std::sqrt(std::fabs(g.K));
  }
  GFunction g1 = g, g2 = g;
  g1.lambda = md.lambda(0);
  g2.lambda = md.lambda(1);
  return {g1, g2};
}

SymmetryOperator first_type_g_operator(const DlvModel& md, int component, double alpha0, double alpha1,
                                       double alpha2) {
  if (component != 0 && component != 1) throw DlvError("component must be 0 (Q^u_1) or 1 (Q^v_1)");
  auto [g1, g2] = g_function(md, alpha0, alpha1, alpha2);
  GFunction g = component == 0 ? g1 : g2;
  auto s = *weighted_scales(md);
  SymmetryOperator op;
  op.id = component == 0 ? "Qu_1" : "Qv_1";
  op.kind = OperatorKind::QConditionalFirstType;
  op.m = 2;
  op.family = "two-component first-type symmetries, weighted coupling";
  op.applicability = "lambda1 != lambda2, second coupling row = (lambda2/lambda1) first row";
  op.formula = component == 0 ? "d_x + (g1_x/g1) u (d_u - d_v)" : "d_x + (g2_x/g2) v (d_v - d_u)";
  op.params = {{"alpha0", alpha0}, {"alpha1", alpha1}, {"alpha2", alpha2}};
  op.coeffs = rescaled(
      [g, component](double t, double x, const Vec& U) {
        OperatorCoeffs c = zero_coeffs(2);
        c.xi1 = 1.0;
        double r = g.g_x(t, x) / g.g(t, x);
        double f = r * U[component];
        c.eta[component] = f;
        c.eta[1 - component] = -f;
        return c;
      },
      s);
  op.domain = [g](double t, double x, const Vec&) {
    double v = g.g(t, x);
    return std::isfinite(v) && std::fabs(v) > 1e-12;
  };
  op.applies = [](const DlvModel& m) { return weighted_scales(m).has_value(); };
  return op;
}

SymmetryOperator q4_operator(const DlvModel& md, int i, double alpha) {
  if (i < 1 || i > 6) throw DlvError("Q^4_i needs i in 1..6");
  auto sc = ones3_scales(md);
  const std::string name = (alpha == 0.0 ? "Q2_" : "Q4_") + std::to_string(i);
  if (!sc) throw RestrictionError(name, "three components with equal coupling rows, entries nonzero");
  const Q4Shape sh = kQ4[i - 1];
  if (eq(lam(md, sh.i), lam(md, sh.j))) throw RestrictionError(name, "lambda_i != lambda_j for the operator's pair");
  Number dN = (ra(md, sh.i) - ra(md, sh.j)) / (lam(md, sh.i) - lam(md, sh.j));
  const double d = dN.value();
  SymmetryOperator op;
  op.id = name;
  op.kind = OperatorKind::QConditionalFirstType;
  op.m = 3;
  op.family = "three-component first-type symmetries";
  op.formula = kQ4Formula[i - 1];
  op.params = {{"alpha", alpha}, {"delta", dN}};
  op.coeffs = rescaled(
      [sh, d, alpha](double, double, const Vec& U) {
        OperatorCoeffs c = zero_coeffs(3);
        c.xi0 = 1.0;
        double uc = U[sh.c];
        c.eta[sh.p] += d * uc;
        c.eta[sh.q] -= d * uc;
        c.eta[sh.ap] += alpha * uc;
        c.eta[sh.am] -= alpha * uc;
        return c;
      },
      *sc);
  if (alpha == 0.0) {
    op.applicability = "equal coupling rows, (a1-a2)^2 + (a1-a3)^2 != 0, lambdas distinct";
    op.applies = [](const DlvModel& m) { return ones3_scales(m) && all_lambda_distinct(m) && case2_inequality(m); };
  } else {
    op.applicability =
        "equal coupling rows, (lambda2-lambda3)a1 - (lambda1-lambda3)a2 + (lambda1-lambda2)a3 = 0, "
        "(a1-a2)^2 + alpha^2 != 0";
    op.applies = [](const DlvModel& m) { return ones3_scales(m) && case4_equality(m); };
  }
  return op;
}

std::vector<SymmetryOperator> operator_catalog(const DlvModel& md, const OperatorParams& prm) {
  const int m = md.m();
  std::vector<SymmetryOperator> out = {translation_t(m), translation_x(m)};

  if (all_a_zero(md)) out.push_back(dilation(m));

  if (m == 2) {
    auto c = lie_cases(md);
    if (c.case2 || c.case3 || c.case4) out.push_back(scale_v_operator());
    if (c.case4) out.push_back(u_dv_operator());
    if (c.case4 && !zero(ra(md, 0))) out.push_back(exp_dv_operator(md));
    if (c.case5) out.push_back(r_operator(md));

    add_equal_coupling(out, md, prm);

    if (weighted_scales(md)) {
      out.push_back(first_type_g_operator(md, 0, prm.alpha0, prm.alpha1, prm.alpha2));
      out.push_back(first_type_g_operator(md, 1, prm.alpha0, prm.alpha1, prm.alpha2));
    }
  }

  if (m == 3) {
    // rows 1, 2 equal with b_11 = b_12, row 3 with b_31 = b_32
    const bool rows12 = eq(rb(md, 0, 0), rb(md, 0, 1)) && eq(rb(md, 1, 0), rb(md, 0, 0)) &&
                        eq(rb(md, 1, 1), rb(md, 0, 0)) && eq(rb(md, 0, 2), rb(md, 1, 2));
    const bool row3 = eq(rb(md, 2, 0), rb(md, 2, 1)) && !zero(rb(md, 2, 0));
    if (rows12 && row3 && all_lambda_distinct(md) && !eq(ra(md, 0), ra(md, 1))) {
      Number bn = rb(md, 0, 0) / rb(md, 2, 0);
      Number e = rb(md, 0, 2), e3 = rb(md, 2, 2);
      bool extra = !(eq(bn, 1) && eq(e, e3));
      if (extra) {
        const double d = ((ra(md, 0) - ra(md, 1)) / (lam(md, 0) - lam(md, 1))).value();
        for (int k = 0; k < 2; ++k) {
          SymmetryOperator op;
          op.id = k == 0 ? "Q1_u" : "Q1_v";
          op.kind = OperatorKind::QConditionalFirstType;
          op.m = 3;
          op.family = "three-component first-type symmetries";
          op.applicability =
              "rows 1, 2 equal with b = b_11 = b_12, e = b_13; row 3 with b_31 = b_32; (b-1)^2 + (e-e3)^2 != 0, "
              "a1 != a2, lambdas distinct";
          op.formula = k == 0 ? "d_t + (a1-a2)/(lambda1-lambda2) u (d_u - d_v)"
                              : "d_t + (a1-a2)/(lambda1-lambda2) v (d_v - d_u)";
          op.coeffs = [d, k](double, double, const Vec& u) {
            OperatorCoeffs c = zero_coeffs(3);
            c.xi0 = 1.0;
            double f = d * u[k];
            c.eta[k] = f;
            c.eta[1 - k] = -f;
            return c;
          };
          op.applies = [](const DlvModel& mm) { return mm.m() == 3; };
          out.push_back(op);
        }
      }
    }

    if (auto sc = ones3_scales(md)) {
      if (all_lambda_distinct(md) && case2_inequality(md)) {
        for (int i = 1; i <= 6; ++i) out.push_back(q4_operator(md, i, 0.0));
      }
      if (all_lambda_distinct(md) && case3_equality(md) && !eq(ra(md, 1), ra(md, 2)) && prm.beta != 0.0) {
        const double d23 = ((ra(md, 1) - ra(md, 2)) / (lam(md, 1) - lam(md, 2))).value();
        const double beta = prm.beta;
        SymmetryOperator op;
        op.id = "Q3_beta";
        op.kind = OperatorKind::QConditionalFirstType;
        op.m = 3;
        op.family = "three-component first-type symmetries";
        op.applicability = "equal coupling rows, (lambda2-lambda3)a1 - lambda2 a3 + lambda3 a2 = 0, a2 != a3, beta != 0";
        op.formula = "d_t + beta exp((a2-a3)/(lambda2-lambda3) t) u (d_v - d_w)";
        op.params = {{"beta", beta}};
        op.coeffs = rescaled(
            [d23, beta](double t, double, const Vec& U) {
              OperatorCoeffs c = zero_coeffs(3);
              c.xi0 = 1.0;
              double f = beta * std::exp(d23 * t) * U[0];
              c.eta[1] = f;
              c.eta[2] = -f;
              return c;
            },
            *sc);
        op.applies = [](const DlvModel& mm) {
          return ones3_scales(mm) && all_lambda_distinct(mm) && case3_equality(mm) && !eq(ra(mm, 1), ra(mm, 2));
        };
        out.push_back(op);
      }
      if (case4_equality(md) && (!eq(ra(md, 0), ra(md, 1)) || prm.alpha != 0.0)) {
        for (int i = 1; i <= 6; ++i) {
          const Q4Shape sh = kQ4[i - 1];
          if (eq(lam(md, sh.i), lam(md, sh.j))) continue;
          out.push_back(q4_operator(md, i, prm.alpha));
        }
      }
    }
  }

  if (m >= 4) {
    if (auto sc = column_scales(md, std::vector<Number>(m, Number(1)))) {
      auto s = to_double(*sc);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if (i == j || eq(ra(md, i), ra(md, j)) || eq(lam(md, i), lam(md, j))) continue;
          const double d = ((ra(md, i) - ra(md, j)) / (lam(md, i) - lam(md, j))).value();
          SymmetryOperator op;
          op.id = "Q_" + std::to_string(i + 1) + std::to_string(j + 1);
          op.kind = OperatorKind::QConditionalFirstType;
          op.m = m;
          op.family = "m-component equal-coupling symmetries";
          op.applicability = "equal coupling rows, (a_i - a_j)(lambda_i - lambda_j) != 0";
          op.formula = "d_t + (a_i-a_j)/(lambda_i-lambda_j) u_i (d_{u_i} - d_{u_j})";
          op.coeffs = rescaled(
              [i, j, d, m](double, double, const Vec& U) {
                OperatorCoeffs c = zero_coeffs(m);
                c.xi0 = 1.0;
                c.eta[i] = d * U[i];
                c.eta[j] = -d * U[i];
                return c;
              },
              s);
          op.applies = [m](const DlvModel& mm) {
            return mm.m() == m && column_scales(mm, std::vector<Number>(m, Number(1))).has_value();
          };
          out.push_back(op);
        }
      }
    }
  }
  return out;
}

std::vector<std::string> documentation_only_operators() {
  return {
      "semi-coupled two-component system lambda1 u_t = u_xx + u(a1 + u), lambda2 v_t = v_xx + v u: "
      "Q = d_t + 2 alpha1/(lambda1-lambda2) d_x + (phi(t) exp(alpha1 x) u + exp(alpha1 x)(lambda2 phi' + a1 phi - "
      "alpha1^2 phi) + alpha2 v) d_v, phi solving lambda2^2 phi'' + lambda2 (a1 - 2 alpha1^2) phi' + "
      "alpha1^2 (alpha1^2 - a1) phi = 0 (no associated exact solution, no flow)",
  };
}

Vec invariant_surface_residual(const SymmetryOperator& op, const ClosedFormSolution& sol, double t, double x) {
  if (op.m != sol.m()) throw DimensionError("operator " + op.id + " and solution " + sol.id + " differ in m");
  JetPoint j = jet(sol, t, x);
  if (!op.in_domain(t, x, j.u)) {
    throw DomainError("operator " + op.id + ": (t, x) = (" + format_double(t) + ", " + format_double(x) +
                      ") is outside its domain");
  }
  OperatorCoeffs c = op.eval(t, x, j.u);
  Vec r(op.m);
  for (int i = 0; i < op.m; ++i) r[i] = c.xi0 * j.u_t[i] + c.xi1 * j.u_x[i] - c.eta[i];
  return r;
}

ClosedFormSolution lie_transform(const SymmetryOperator& op, double eps, const ClosedFormSolution& sol) {
  if (!op.flow) throw UnsupportedError("no finite transformation implemented for operator " + op.id);
  if (op.m != sol.m()) throw DimensionError("operator " + op.id + " and solution " + sol.id + " differ in m");
  if (op.applies && !op.applies(sol.model)) throw RestrictionError(op.id, op.applicability);
  return op.flow(eps, sol);
}

std::vector<RegisteredPair> pairs_for(const ClosedFormSolution& sol, const std::string& label) {
  std::vector<RegisteredPair> out;
  const std::string& id = sol.id;
  const auto& p = sol.params;
  if (id.rfind("CD11_", 0) == 0) out.push_back({"QC1_1", label, equal_coupling_affine(sol.model), sol});
  if (id == "CD21_CASE1") {
    auto op = first_type_g_operator(sol.model, 0, p.at("alpha0").value(), p.at("alpha1").value(),
                                    p.at("alpha2").value());
    out.push_back({"Qu_1", label, op, sol});
  }
  if (id == "CD13_3COMP") out.push_back({"Q4_1", label, q4_operator(sol.model, 1, p.at("alpha").value()), sol});
  if (sol.tanh_form) out.push_back({"P_t+alpha*P_x", label, front_operator(sol.m(), sol.tanh_form->alpha), sol});
  return out;
}

std::vector<RegisteredPair> registered_pairs() {
  std::vector<RegisteredPair> out;
  auto add = [&](const ClosedFormSolution& sol, const std::string& label) {
    for (auto& r : pairs_for(sol, label)) out.push_back(std::move(r));
  };
  for (const char* id : {"CD11_TRIG", "CD11_EXP", "CD11_TANH2", "CD11_TANH3", "CD11_COMP"}) add(instantiate(id), id);
  add(instantiate("CD21_CASE1"), "CD21_CASE1");
  add(instantiate("CD21_CASE1", {{"b", Number(3, 2)}, {"c", 3}}), "CD21_CASE1(b=3/2,c=3)");
  add(instantiate("CD13_3COMP"), "CD13_3COMP");
  for (const auto& e : catalog())
    if (e.tanh_type) add(instantiate(e.id), e.id);
  return out;
}

}  // namespace dlv
