#include "dlv/model.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "dlv/errors.hpp"

namespace dlv {

DlvModel DlvModel::build(std::vector<Number> lambda, std::vector<Number> a, std::vector<std::vector<Number>> b,
                         std::string name) {
  const auto m = static_cast<int>(lambda.size());
  if (m < 2) throw DimensionError("model needs at least two components");
  if (a.size() != lambda.size() || b.size() != lambda.size()) {
    throw DimensionError("lambda, a and b must have matching sizes");
  }
  for (const auto& row : b) {
    if (row.size() != lambda.size()) throw DimensionError("b must be square");
  }
  for (const auto& l : lambda) {
    if (!(l.value() > 0.0) || !std::isfinite(l.value())) {
      throw DimensionError("lambda must be positive and finite, got " + l.str());
    }
  }
  DlvModel md;
  md.m_ = m;
  md.name_ = std::move(name);
  md.lambda_ = std::move(lambda);
  md.a_ = std::move(a);
  md.b_ = std::move(b);
  for (int i = 0; i < m; ++i) {
    md.lam_d_.push_back(md.lambda_[i].value());
    md.a_d_.push_back(md.a_[i].value());
    for (int j = 0; j < m; ++j) md.b_d_.push_back(md.b_[i][j].value());
  }
  return md;
}

DlvModel DlvModel::two_component(Number l1, Number l2, Number a1, Number a2, Number b1, Number c1, Number b2,
                                 Number c2, std::string name) {
  return build({l1, l2}, {a1, a2}, {{b1, c1}, {b2, c2}}, std::move(name));
}

DlvModel DlvModel::three_component(Number l1, Number l2, Number l3, Row3 r1, Row3 r2, Row3 r3, std::string name) {
  return build({l1, l2, l3}, {r1.a, r2.a, r3.a},
               {{r1.b, r1.c, r1.e}, {r2.b, r2.c, r2.e}, {r3.b, r3.c, r3.e}}, std::move(name));
}

double DlvModel::min_lambda() const { return *std::min_element(lam_d_.begin(), lam_d_.end()); }

DlvModel DlvModel::rescale_components(const std::vector<Number>& s) const {
  if (static_cast<int>(s.size()) != m_) throw DimensionError("rescale vector has wrong size");
  auto b = b_;
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) b[i][j] = b_[i][j] * s[j];
  }
  return build(lambda_, a_, b, name_);
}

DlvModel DlvModel::renamed(std::string name) const {
  DlvModel md = *this;
  md.name_ = std::move(name);
  return md;
}

JetPoint JetPoint::zeros(int m, double t, double x) {
  JetPoint j;
  j.t = t;
  j.x = x;
  j.u.assign(m, 0.0);
  j.u_t.assign(m, 0.0);
  j.u_x.assign(m, 0.0);
  j.u_xx.assign(m, 0.0);
  return j;
}

bool JetPoint::finite() const {
  auto ok = [](const Vec& v) { return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); }); };
  return ok(u) && ok(u_t) && ok(u_x) && ok(u_xx);
}

Vec reaction(const DlvModel& model, const Vec& u) {
  const int m = model.m();
  if (static_cast<int>(u.size()) != m) throw DimensionError("state has wrong size");
  Vec r(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double s = model.a(i);
    for (int j = 0; j < m; ++j) s += model.b(i, j) * u[j];
    r[i] = u[i] * s;  // exactly zero when u[i] == 0
  }
  return r;
}

Vec pde_residual(const DlvModel& model, const JetPoint& jet) {
  const int m = model.m();
  if (static_cast<int>(jet.u.size()) != m || static_cast<int>(jet.u_t.size()) != m ||
      static_cast<int>(jet.u_xx.size()) != m) {
    throw DimensionError("jet has wrong size");
  }
  Vec r = reaction(model, jet.u);
  Vec s(m);
  for (int i = 0; i < m; ++i) s[i] = model.lambda(i) * jet.u_t[i] - jet.u_xx[i] - r[i];
  return s;
}

double residual_scale(const DlvModel& model, const JetPoint& jet) {
  const int m = model.m();
  double sc = 0.0;
  for (int i = 0; i < m; ++i) {
    sc = std::max(sc, std::fabs(model.lambda(i) * jet.u_t[i]));
    sc = std::max(sc, std::fabs(jet.u_xx[i]));
    sc = std::max(sc, std::fabs(model.a(i) * jet.u[i]));
    for (int j = 0; j < m; ++j) sc = std::max(sc, std::fabs(model.b(i, j) * jet.u[i] * jet.u[j]));
  }
  return sc;
}

double scaled_residual(const DlvModel& model, const JetPoint& jet) {
  Vec s = pde_residual(model, jet);
  double mx = 0.0;
  for (double v : s) mx = std::max(mx, std::fabs(v));
  return mx / (1.0 + residual_scale(model, jet));
}

NondegeneracyReport nondegeneracy(const DlvModel& model) {
  NondegeneracyReport rep;
  auto nz2 = [&](int i1, int j1, int i2, int j2) {
    double p = model.b(i1, j1), q = model.b(i2, j2);
    return p * p + q * q != 0.0;
  };
  if (model.m() == 2) {
    rep.applicable = true;
    rep.flags = {{"b1^2+c1^2!=0", nz2(0, 0, 0, 1)},
                 {"b2^2+c2^2!=0", nz2(1, 0, 1, 1)},
                 {"c1^2+b2^2!=0", nz2(0, 1, 1, 0)}};
  } else if (model.m() == 3) {
    rep.applicable = true;
    rep.flags = {{"c1^2+e1^2!=0", nz2(0, 1, 0, 2)},
                 {"b2^2+e2^2!=0", nz2(1, 0, 1, 2)},
                 {"b3^2+c3^2!=0", nz2(2, 0, 2, 1)}};
  } else {
    return rep;
  }
  rep.pass = std::all_of(rep.flags.begin(), rep.flags.end(), [](const auto& f) { return f.second; });
  return rep;
}

SteadyStateReport steady_states(const DlvModel& model) {
  const int m = model.m();
  SteadyStateReport rep;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    const auto k = static_cast<int>(idx.size());
    if (k == 0) {
      rep.states.push_back({Vec(m, 0.0), {}});
      continue;
    }
    Eigen::MatrixXd A(k, k);
    Eigen::VectorXd rhs(k);
    double amax = 0.0;
    for (int r = 0; r < k; ++r) {
      rhs(r) = -model.a(idx[r]);
      for (int c = 0; c < k; ++c) {
        A(r, c) = model.b(idx[r], idx[c]);
        amax = std::max(amax, std::fabs(A(r, c)));
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-12);
    if (amax == 0.0 || lu.rank() < k) {
      // Consistent when the right-hand side lies in the column space.
      bool consistent = false;
      if (amax == 0.0) {
        consistent = rhs.cwiseAbs().maxCoeff() == 0.0;
      } else {
        Eigen::VectorXd sol = lu.solve(rhs);
        consistent = (A * sol - rhs).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff());
      }
      rep.degenerate.push_back({idx, consistent});
      continue;
    }
    Eigen::VectorXd sol = lu.solve(rhs);
    Vec u(m, 0.0);
    bool all_nonzero = true;
    for (int r = 0; r < k; ++r) {
      u[idx[r]] = sol(r);
      if (sol(r) == 0.0) all_nonzero = false;
    }
    if (!all_nonzero) continue;  // already listed under a smaller subset
    rep.states.push_back({u, idx});
  }
  return rep;
}

bool is_steady_state_member(const DlvModel& model, const Vec& u, double tol) {
  const int m = model.m();
  auto rep = steady_states(model);
  for (const auto& s : rep.states) {
    double d = 0.0;
    for (int i = 0; i < m; ++i) d = std::max(d, std::fabs(s.u[i] - u[i]));
    double umax = 0.0;
    for (double v : s.u) umax = std::max(umax, std::fabs(v));
    if (d <= tol * (1.0 + umax)) return true;
  }
  std::vector<int> support;
  for (int i = 0; i < m; ++i) {
    if (std::fabs(u[i]) > tol) support.push_back(i);
  }
  for (const auto& d : rep.degenerate) {
    if (!d.consistent) continue;
    bool inside = std::all_of(support.begin(), support.end(), [&](int i) {
      return std::find(d.active_set.begin(), d.active_set.end(), i) != d.active_set.end();
    });
    if (!inside) continue;
    Vec r = reaction(model, u);
    double umax = 0.0, rmax = 0.0;
    for (int i = 0; i < m; ++i) {
      umax = std::max(umax, std::fabs(u[i]));
      rmax = std::max(rmax, std::fabs(r[i]));
    }
    if (rmax <= tol * (1.0 + umax * umax)) return true;
  }
  return false;
}

}  // namespace dlv
