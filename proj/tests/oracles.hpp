#pragma once

// Independent reference computations shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <vector>

#include "dlv/model.hpp"
#include "dlv/solutions.hpp"

namespace oracle {

using dlv::Vec;

// Fourth-order central differences of eval in t and x.
struct FdJet {
  Vec u_t, u_x, u_xx;
};

inline FdJet fd_jet(const dlv::ClosedFormSolution& s, double t, double x, double h) {
  const int m = s.m();
  auto f = [&](double tt, double xx) { return dlv::eval(s, tt, xx); };
  const Vec xm2 = f(t, x - 2 * h), xm1 = f(t, x - h), x0 = f(t, x), xp1 = f(t, x + h), xp2 = f(t, x + 2 * h);
  const Vec tm2 = f(t - 2 * h, x), tm1 = f(t - h, x), tp1 = f(t + h, x), tp2 = f(t + 2 * h, x);
  FdJet r{Vec(m), Vec(m), Vec(m)};
  for (int i = 0; i < m; ++i) {
    r.u_x[i] = (xm2[i] - 8 * xm1[i] + 8 * xp1[i] - xp2[i]) / (12 * h);
    r.u_xx[i] = (-xm2[i] + 16 * xm1[i] - 30 * x0[i] + 16 * xp1[i] - xp2[i]) / (12 * h * h);
    r.u_t[i] = (tm2[i] - 8 * tm1[i] + 8 * tp1[i] - tp2[i]) / (12 * h);
  }
  return r;
}

inline double fd_error(const dlv::ClosedFormSolution& s, double t, double x, double h) {
  const FdJet fd = fd_jet(s, t, x, h);
  const dlv::JetPoint j = dlv::jet(s, t, x);
  double e = 0.0;
  for (int i = 0; i < s.m(); ++i)
    e = std::max({e, std::abs(fd.u_t[i] - j.u_t[i]), std::abs(fd.u_x[i] - j.u_x[i]), std::abs(fd.u_xx[i] - j.u_xx[i])});
  return e;
}

// r_i = u_i (a_i + sum_j b_ij u_j) written out from the model coefficients.
inline Vec reaction(const dlv::DlvModel& m, const Vec& u) {
  Vec r(m.m());
  for (int i = 0; i < m.m(); ++i) {
    double g = m.a(i);
    for (int j = 0; j < m.m(); ++j) g += m.b(i, j) * u[j];
    r[i] = u[i] * g;
  }
  return r;
}

// d r_i / d u_j
inline double reaction_jacobian(const dlv::DlvModel& m, const Vec& u, int i, int j) {
  double d = m.b(i, j) * u[i];
  if (i == j) {
    d += m.a(i);
    for (int k = 0; k < m.m(); ++k) d += m.b(i, k) * u[k];
  }
  return d;
}

inline double max_abs(const Vec& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

inline double max_diff(const Vec& a, const Vec& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

// Max scaled residual over an n x n grid of the window (invalid points skipped).
inline double grid_residual(const dlv::ClosedFormSolution& s, int n = 21) {
  double r = 0.0;
  for (double t : dlv::linspace(s.window.t0, s.window.t1, n))
    for (double x : dlv::linspace(s.window.x0, s.window.x1, n))
      if (s.valid(t, x)) r = std::max(r, dlv::scaled_residual(s.model, dlv::jet(s, t, x)));
  return r;
}

}  // namespace oracle
