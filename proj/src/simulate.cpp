#include "dlv/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dlv/io.hpp"
#include "dlv/number.hpp"

namespace dlv {

namespace {

constexpr double kBlowUp = 1e150;

using Field = std::vector<Vec>;

// Boundary value and its time derivative for a Dirichlet end.
std::pair<double, double> dirichlet_value(const BoundarySpec& b, int i, double t, double x) {
  if (b.kind == BoundarySpec::Kind::DirichletConstant) return {b.value, 0.0};
  const JetPoint j = jet(*b.sol, t, x);
  return {j.u[i], j.u_t[i]};
}

void check_bc(const BoundaryCondition& bc, int m) {
  if (static_cast<int>(bc.left.size()) != m || static_cast<int>(bc.right.size()) != m)
    throw DimensionError("boundary condition has " + std::to_string(bc.left.size()) + "/" +
                         std::to_string(bc.right.size()) + " entries for a " + std::to_string(m) +
                         "-component model");
  for (const auto* side : {&bc.left, &bc.right})
    for (const auto& b : *side)
      if (b.kind == BoundarySpec::Kind::DirichletFromSolution && !b.sol)
        throw DlvError("boundary taken from a solution but no solution given");
}

// Mirror-ghost second difference; Dirichlet ends are overwritten by the caller.
double laplacian(const Vec& u, int k, double inv_dx2) {
  const int n = static_cast<int>(u.size());
  if (k == 0) return 2.0 * (u[1] - u[0]) * inv_dx2;
  if (k == n - 1) return 2.0 * (u[n - 2] - u[n - 1]) * inv_dx2;
  return (u[k - 1] - 2.0 * u[k] + u[k + 1]) * inv_dx2;
}

Vec node_values(const Field& f, int k) {
  Vec u(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) u[i] = f[i][k];
  return u;
}

Field rhs(const DlvModel& model, const Grid1D& grid, const BoundaryCondition& bc, double t, const Field& f) {
  const int m = model.m(), n = grid.nx;
  const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
  Field d(m, Vec(n));
  for (int i = 0; i < m; ++i) {
    const double inv_l = 1.0 / model.lambda(i), ai = model.a(i);
    for (int k = 0; k < n; ++k) {
      double g = ai;
      for (int j = 0; j < m; ++j) g += model.b(i, j) * f[j][k];
      d[i][k] = (laplacian(f[i], k, inv_dx2) + f[i][k] * g) * inv_l;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (bc.left[i].kind != BoundarySpec::Kind::NeumannZero) d[i][0] = dirichlet_value(bc.left[i], i, t, grid.A).second;
    if (bc.right[i].kind != BoundarySpec::Kind::NeumannZero)
      d[i][n - 1] = dirichlet_value(bc.right[i], i, t, grid.B).second;
  }
  return d;
}

void impose_dirichlet(const Grid1D& grid, const BoundaryCondition& bc, double t, Field& f) {
  const int n = grid.nx;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (bc.left[i].kind != BoundarySpec::Kind::NeumannZero)
      f[i][0] = dirichlet_value(bc.left[i], static_cast<int>(i), t, grid.A).first;
    if (bc.right[i].kind != BoundarySpec::Kind::NeumannZero)
      f[i][n - 1] = dirichlet_value(bc.right[i], static_cast<int>(i), t, grid.B).first;
  }
}

Field axpy(const Field& a, double s, const Field& d) {
  Field r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t k = 0; k < r[i].size(); ++k) r[i][k] += s * d[i][k];
  return r;
}

Field rk4_step(const DlvModel& model, const Grid1D& grid, const BoundaryCondition& bc, double t, const Field& u,
               double dt) {
  const Field k1 = rhs(model, grid, bc, t, u);
  const Field k2 = rhs(model, grid, bc, t + dt / 2, axpy(u, dt / 2, k1));
  const Field k3 = rhs(model, grid, bc, t + dt / 2, axpy(u, dt / 2, k2));
  const Field k4 = rhs(model, grid, bc, t + dt, axpy(u, dt, k3));
  Field r = u;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t k = 0; k < r[i].size(); ++k)
      r[i][k] += dt / 6.0 * (k1[i][k] + 2.0 * k2[i][k] + 2.0 * k3[i][k] + k4[i][k]);
  impose_dirichlet(grid, bc, t + dt, r);
  return r;
}

// Solves a tridiagonal system in place: sub[k] x[k-1] + diag[k] x[k] + sup[k] x[k+1] = rhs[k].
void thomas(Vec sub, Vec diag, Vec sup, Vec& x) {
  const std::size_t n = diag.size();
  for (std::size_t k = 1; k < n; ++k) {
    const double w = sub[k] / diag[k - 1];
    diag[k] -= w * sup[k - 1];
    x[k] -= w * x[k - 1];
  }
  x[n - 1] /= diag[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) x[k] = (x[k] - sup[k] * x[k + 1]) / diag[k];
}

// Crank-Nicolson diffusion with the reaction taken explicitly at the old level.
Field imex_step(const DlvModel& model, const Grid1D& grid, const BoundaryCondition& bc, double t, const Field& u,
                double dt) {
  const int m = model.m(), n = grid.nx;
  const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
  Field r(m, Vec(n));
  std::vector<Vec> react(n);
  for (int k = 0; k < n; ++k) react[k] = reaction(model, node_values(u, k));
  for (int i = 0; i < m; ++i) {
    const double c = dt / (2.0 * model.lambda(i)) * inv_dx2;
    Vec sub(n, -c), diag(n, 1.0 + 2.0 * c), sup(n, -c), x(n);
    for (int k = 0; k < n; ++k)
      x[k] = u[i][k] + dt / (2.0 * model.lambda(i)) * laplacian(u[i], k, inv_dx2) + dt / model.lambda(i) * react[k][i];
    sup[0] = -2.0 * c;
    sub[n - 1] = -2.0 * c;
    if (bc.left[i].kind != BoundarySpec::Kind::NeumannZero) {
      diag[0] = 1.0;
      sup[0] = 0.0;
      x[0] = dirichlet_value(bc.left[i], i, t + dt, grid.A).first;
    }
    if (bc.right[i].kind != BoundarySpec::Kind::NeumannZero) {
      diag[n - 1] = 1.0;
      sub[n - 1] = 0.0;
      x[n - 1] = dirichlet_value(bc.right[i], i, t + dt, grid.B).first;
    }
    thomas(sub, diag, sup, x);
    r[i] = std::move(x);
  }
  return r;
}

void check_blowup(const Grid1D& grid, const Field& f, double t) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (int k = 0; k < grid.nx; ++k) {
      const double v = f[i][k];
      if (!std::isfinite(v) || std::abs(v) > kBlowUp) {
        std::ostringstream os;
        os << "blow-up at t = " << format_double(t) << ": component " << i + 1 << " at node " << k
           << " (x = " << format_double(grid.x(k)) << ") is " << format_double(v);
        throw BlowUpError(t, os.str());
      }
    }
}

std::string bc_name(const BoundarySpec& b) {
  switch (b.kind) {
    case BoundarySpec::Kind::NeumannZero: return "neumann";
    case BoundarySpec::Kind::DirichletConstant: return "dirichlet=" + format_double(b.value);
    case BoundarySpec::Kind::DirichletFromSolution: return "dirichlet:" + b.sol->id;
  }
  return "?";
}

}  // namespace

CflError::CflError(double dt, double suggested)
    : DlvError("time step " + format_double(dt) + " violates the explicit diffusion limit; use dt <= " +
               format_double(suggested)),
      dt_(dt),
      suggested_(suggested) {}

Grid1D::Grid1D(double a, double b, int n) : A(a), B(b), nx(n) {
  if (n < 8) throw DlvError("grid needs at least 8 nodes, got " + std::to_string(n));
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
    throw DlvError("grid needs finite A < B, got [" + format_double(a) + ", " + format_double(b) + "]");
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> xs(nx);
  for (int k = 0; k < nx; ++k) xs[k] = x(k);
  return xs;
}

BoundaryCondition BoundaryCondition::neumann(int m) {
  return {std::vector<BoundarySpec>(m), std::vector<BoundarySpec>(m)};
}

BoundaryCondition BoundaryCondition::dirichlet(const Vec& left, const Vec& right) {
  if (left.size() != right.size()) throw DimensionError("left and right boundary values differ in length");
  BoundaryCondition bc;
  for (double v : left) bc.left.push_back(BoundarySpec::constant(v));
  for (double v : right) bc.right.push_back(BoundarySpec::constant(v));
  return bc;
}

BoundaryCondition BoundaryCondition::from_solution(const ClosedFormSolution& sol) {
  auto p = std::make_shared<const ClosedFormSolution>(sol);
  BoundaryCondition bc;
  for (int i = 0; i < sol.m(); ++i) {
    bc.left.push_back(BoundarySpec::from_solution(p));
    bc.right.push_back(BoundarySpec::from_solution(p));
  }
  return bc;
}

std::string scheme_name(Scheme s) { return s == Scheme::RK4 ? "rk4" : "imex"; }

double max_stable_dt(const DlvModel& model, const Grid1D& grid) {
  return 0.9 * model.min_lambda() * grid.dx() * grid.dx() / 2.0;
}

double truncation_half_width(const ClosedFormSolution& sol, double tol) {
  if (!sol.tanh_form || sol.tanh_form->coth) throw UnsupportedError(sol.id + " is not a tanh front");
  const TanhForm& f = *sol.tanh_form;
  auto limit = [&](const std::vector<double>& A, double T) {
    double v = 0.0;
    for (std::size_t k = 0; k < A.size(); ++k) v += A[k] * std::pow(T, static_cast<double>(k));
    return v;
  };
  auto tails_ok = [&](double L) {
    const Vec lo = eval(sol, 0.0, -L), hi = eval(sol, 0.0, L);
    const double s = f.mu > 0 ? 1.0 : -1.0;  // sign of T at x = +L
    for (int i = 0; i < sol.m(); ++i)
      if (std::abs(hi[i] - limit(f.A[i], s)) >= tol || std::abs(lo[i] - limit(f.A[i], -s)) >= tol) return false;
    return true;
  };
  for (double L = 0.5; L <= 1e4; L += 0.5)
    if (tails_ok(L)) return L;
  throw DlvError(sol.id + ": tails do not reach tolerance " + format_double(tol) + " within |x| <= 1e4");
}

FieldState init_from_solution(const ClosedFormSolution& sol, const Grid1D& grid, double t0) {
  FieldState s;
  s.t = t0;
  s.values.assign(sol.m(), Vec(grid.nx));
  for (int k = 0; k < grid.nx; ++k) {
    const double x = grid.x(k);
    Vec u;
    bool ok = sol.valid(t0, x);
    if (ok) {
      try {
        u = eval(sol, t0, x);
        ok = std::all_of(u.begin(), u.end(), [](double v) { return std::isfinite(v); });
      } catch (const DomainError&) {
        ok = false;
      }
    }
    if (!ok)
      throw DomainError(sol.id + " is singular or undefined at node " + std::to_string(k) +
                        " (t = " + format_double(t0) + ", x = " + format_double(x) + ")");
    for (int i = 0; i < sol.m(); ++i) s.values[i][k] = u[i];
  }
  return s;
}

FieldState constant_state(const Vec& u, const Grid1D& grid, double t0) {
  FieldState s;
  s.t = t0;
  for (double v : u) s.values.emplace_back(grid.nx, v);
  return s;
}

FieldState step(const DlvModel& model, const Grid1D& grid, const FieldState& s, const BoundaryCondition& bc, double dt,
                Scheme scheme) {
  if (static_cast<int>(s.values.size()) != model.m())
    throw DimensionError("state has " + std::to_string(s.values.size()) + " components, model has " +
                         std::to_string(model.m()));
  for (const auto& v : s.values)
    if (static_cast<int>(v.size()) != grid.nx) throw DimensionError("state length does not match the grid");
  check_bc(bc, model.m());
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DlvError("time step must be positive, got " + format_double(dt));
  if (scheme == Scheme::RK4) {
    const double lim = max_stable_dt(model, grid);
    if (dt > lim * (1.0 + 1e-12)) throw CflError(dt, lim);
  }
  FieldState r;
  r.t = s.t + dt;
  r.values = scheme == Scheme::RK4 ? rk4_step(model, grid, bc, s.t, s.values, dt)
                                   : imex_step(model, grid, bc, s.t, s.values, dt);
  check_blowup(grid, r.values, r.t);
  return r;
}

RunResult run(const DlvModel& model, const Grid1D& grid, const FieldState& s0, const BoundaryCondition& bc,
              const SimConfig& cfg) {
  if (!(cfg.T >= 0.0)) throw DlvError("final time must be non-negative");
  if (cfg.scheme == Scheme::RK4 && cfg.dt > max_stable_dt(model, grid) * (1.0 + 1e-12))
    throw CflError(cfg.dt, max_stable_dt(model, grid));
  RunResult res;
  res.snapshots.push_back(s0);
  const double t_end = s0.t + cfg.T;
  const long nsteps = cfg.T == 0.0 ? 0 : static_cast<long>(std::ceil(cfg.T / cfg.dt - 1e-9));
  FieldState cur = s0;
  for (long n = 1; n <= nsteps; ++n) {
    const double dt = n == nsteps ? t_end - cur.t : cfg.dt;
    try {
      cur = step(model, grid, cur, bc, dt, cfg.scheme);
    } catch (const BlowUpError& e) {
      res.blew_up = true;
      res.blowup_time = e.time();
      res.message = e.what();
      return res;
    }
    if (n == nsteps) cur.t = t_end;
    if (n == nsteps || (cfg.stride > 0 && n % cfg.stride == 0)) res.snapshots.push_back(cur);
  }
  return res;
}

std::pair<double, double> error_vs_solution(const Grid1D& grid, const FieldState& s, const ClosedFormSolution& sol) {
  double linf = 0.0, l2 = 0.0;
  const double dx = grid.dx();
  for (int k = 0; k < grid.nx; ++k) {
    const Vec u = eval(sol, s.t, grid.x(k));
    const double w = (k == 0 || k == grid.nx - 1) ? dx / 2 : dx;
    for (int i = 0; i < sol.m(); ++i) {
      const double e = std::abs(s.values[i][k] - u[i]);
      linf = std::max(linf, e);
      l2 += w * e * e;
    }
  }
  return {linf, std::sqrt(l2)};
}

double trapezoid_mass(const Grid1D& grid, const FieldState& s, int i) {
  const Vec& u = s.values.at(i);
  double sum = 0.0;
  for (int k = 0; k < grid.nx; ++k) sum += (k == 0 || k == grid.nx - 1) ? u[k] / 2 : u[k];
  return sum * grid.dx();
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DlvError("slope needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceStudy convergence_order(const ClosedFormSolution& sol, double A, double B, const std::vector<int>& nxs,
                                   double T, const BoundaryCondition& bc, double t0, double dt_factor, Scheme scheme) {
  ConvergenceStudy st;
  std::vector<double> lx, ly;
  for (int nx : nxs) {
    const Grid1D g(A, B, nx);
    const double target = dt_factor * sol.model.min_lambda() * g.dx() * g.dx();
    const double steps = std::ceil(T / target);
    SimConfig cfg;
    cfg.dt = T / steps;
    cfg.T = T;
    cfg.scheme = scheme;
    const RunResult r = run(sol.model, g, init_from_solution(sol, g, t0), bc, cfg);
    if (r.blew_up) throw BlowUpError(r.blowup_time, r.message);
    const double e = error_vs_solution(g, r.final_state(), sol).first;
    st.nx.push_back(nx);
    st.dx.push_back(g.dx());
    st.dt.push_back(cfg.dt);
    st.linf.push_back(e);
    lx.push_back(std::log(g.dx()));
    ly.push_back(std::log(e));
  }
  st.order = least_squares_slope(lx, ly);
  return st;
}

void write_snapshot_csv(std::ostream& os, const Grid1D& grid, const FieldState& s, bool header) {
  if (header) write_state_csv_header(os, static_cast<int>(s.values.size()));
  write_state_rows(os, s.t, grid.nodes(), s.values);
}

void write_run_manifest(std::ostream& os, const DlvModel& model, const Grid1D& grid, const BoundaryCondition& bc,
                        const SimConfig& cfg) {
  nlohmann::json j;
  j["model"] = model_to_json(model);
  j["model_hash"] = std::to_string(std::hash<std::string>{}(model_to_json(model).dump()));
  j["grid"] = {{"A", grid.A}, {"B", grid.B}, {"nx", grid.nx}, {"dx", grid.dx()}};
  j["scheme"] = scheme_name(cfg.scheme);
  j["dt"] = cfg.dt;
  j["T"] = cfg.T;
  j["stride"] = cfg.stride;
  nlohmann::json l = nlohmann::json::array(), r = nlohmann::json::array();
  for (const auto& b : bc.left) l.push_back(bc_name(b));
  for (const auto& b : bc.right) r.push_back(bc_name(b));
  j["boundary"] = {{"left", l}, {"right", r}};
  os << j.dump(2) << "\n";
}

}  // namespace dlv
