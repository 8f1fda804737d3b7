#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "dlv/errors.hpp"
#include "dlv/simulate.hpp"
#include "oracles.hpp"

using namespace dlv;

namespace {

constexpr double kPi = std::numbers::pi;

// Zero reaction, lambda = 1.
DlvModel heat_model() { return DlvModel::two_component(1, 1, 0, 0, 0, 0, 0, 0, "heat"); }

// u = exp(-pi^2 t) cos(pi x), v = 2 + exp(-4 pi^2 t) cos(2 pi x): Neumann-compatible on [0, 1].
ClosedFormSolution heat_modes() {
  return wrap_solution(
      "heat_modes", heat_model(),
      [](double t, double x) {
        JetPoint j = JetPoint::zeros(2, t, x);
        const double e1 = std::exp(-kPi * kPi * t), e2 = std::exp(-4 * kPi * kPi * t);
        j.u = {e1 * std::cos(kPi * x), 2 + e2 * std::cos(2 * kPi * x)};
        j.u_t = {-kPi * kPi * j.u[0], -4 * kPi * kPi * (j.u[1] - 2)};
        j.u_x = {-kPi * e1 * std::sin(kPi * x), -2 * kPi * e2 * std::sin(2 * kPi * x)};
        j.u_xx = {-kPi * kPi * j.u[0], -4 * kPi * kPi * (j.u[1] - 2)};
        return j;
      },
      nullptr, Window{0, 0.1, 0, 1}, true);
}

double state_diff(const FieldState& a, const FieldState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, oracle::max_diff(a.values[i], b.values[i]));
  return d;
}

}  // namespace

TEST_CASE("grid validation and node placement") {
  CHECK_THROWS_AS(Grid1D(0, 1, 7), DlvError);
  CHECK_THROWS_AS(Grid1D(1, 1, 10), DlvError);
  CHECK_THROWS_AS(Grid1D(0, NAN, 10), DlvError);
  const Grid1D g(-1, 2, 31);
  CHECK(g.dx() == doctest::Approx(0.1));
  CHECK(g.x(0) == -1.0);
  CHECK(g.x(30) == 2.0);
  CHECK(g.nodes().size() == 31);
}

TEST_CASE("initial state samples the closed form exactly") {
  const auto s = instantiate("FISHER_FRONT");
  const Grid1D g(-20, 20, 101);
  const FieldState f = init_from_solution(s, g, 0.3);
  CHECK(f.t == 0.3);
  CHECK(error_vs_solution(g, f, s).first == 0.0);
}

TEST_CASE("initial state names the singular node") {
  const auto s = instantiate("CD11_TANH3");
  const Grid1D g(-1, 3, 41);
  try {
    init_from_solution(s, g, 0.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("CD11_TANH3 is singular or undefined at node") == 0);
  }
}

TEST_CASE("a steady state does not move") {
  const auto s = instantiate("CD13_3COMP");
  const Vec u = *time_asymptote(s);
  const Grid1D g(0, 1, 41);
  SimConfig c;
  c.T = 0.2;
  c.dt = 0.5 * max_stable_dt(s.model, g);
  const FieldState f0 = constant_state(u, g);
  for (Scheme sc : {Scheme::RK4, Scheme::IMEX}) {
    c.scheme = sc;
    const RunResult r = run(s.model, g, f0, BoundaryCondition::neumann(3), c);
    CHECK_FALSE(r.blew_up);
    CHECK(state_diff(r.final_state(), f0) <= 1e-14 * (1 + oracle::max_abs(u)));
  }
}

TEST_CASE("heat modes decay at the right rate") {
  const auto s = heat_modes();
  const Grid1D g(0, 1, 101);
  SimConfig c;
  c.T = 0.1;
  c.dt = 0.4 * g.dx() * g.dx();
  const RunResult r = run(s.model, g, init_from_solution(s, g, 0), BoundaryCondition::neumann(2), c);
  CHECK(r.final_state().t == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(error_vs_solution(g, r.final_state(), s).first <= 2e-4);
}

TEST_CASE("pure diffusion converges at second order for both schemes") {
  const auto s = heat_modes();
  const auto rk = convergence_order(s, 0, 1, {41, 81, 161}, 0.05, BoundaryCondition::neumann(2));
  CHECK(rk.order >= 1.9);
  CHECK(rk.order <= 2.1);
  const auto im = convergence_order(s, 0, 1, {41, 81, 161}, 0.05, BoundaryCondition::neumann(2), 0, 0.4, Scheme::IMEX);
  CHECK(im.order >= 1.9);
  REQUIRE(rk.linf.size() == 3);
  CHECK(rk.linf[2] < rk.linf[0]);
}

TEST_CASE("reacting front converges at second order with exact boundary data") {
  const auto s = instantiate("CD11_TRIG");
  const auto st = convergence_order(s, s.window.x0, s.window.x1, {41, 81, 161}, 0.2, BoundaryCondition::from_solution(s));
  CHECK(st.order >= 1.9);
}

TEST_CASE("explicit step above the diffusion limit is rejected") {
  const auto s = instantiate("FISHER_FRONT");
  const Grid1D g(-10, 10, 101);
  SimConfig c;
  c.dt = 1.0;
  try {
    run(s.model, g, init_from_solution(s, g, 0), BoundaryCondition::neumann(2), c);
    FAIL("expected CflError");
  } catch (const CflError& e) {
    CHECK(e.dt() == 1.0);
    CHECK(e.suggested_dt() == doctest::Approx(max_stable_dt(s.model, g)));
    CHECK(std::string(e.what()).find("dt <=") != std::string::npos);
  }
  // the implicit diffusion scheme accepts it
  c.scheme = Scheme::IMEX;
  c.dt = 0.01;
  c.T = 0.05;
  CHECK_NOTHROW(run(s.model, g, init_from_solution(s, g, 0), BoundaryCondition::neumann(2), c));
}

TEST_CASE("max stable dt formula") {
  const DlvModel md = DlvModel::two_component(2, Number(1, 2), 0, 0, 0, 0, 0, 0);
  const Grid1D g(0, 1, 11);
  CHECK(max_stable_dt(md, g) == doctest::Approx(0.9 * 0.5 * 0.01 / 2));
}

TEST_CASE("blow-up is reported instead of producing NaN") {
  const auto s = instantiate("FISHER_COTH");
  const Grid1D g(0.05, 10, 200);
  SimConfig c;
  c.T = 1.0;
  c.dt = 0.4 * g.dx() * g.dx();
  const RunResult r = run(s.model, g, init_from_solution(s, g, 0), BoundaryCondition::neumann(2), c);
  CHECK(r.blew_up);
  CHECK(r.blowup_time > 0.0);
  CHECK(r.blowup_time < 1.0);
  CHECK_FALSE(r.message.empty());
  for (const auto& snap : r.snapshots)
    for (const auto& v : snap.values)
      for (double x : v) CHECK(std::isfinite(x));
}

TEST_CASE("zero-flux diffusion conserves mass") {
  const Grid1D g(0, 2, 81);
  FieldState f = constant_state({0, 0}, g);
  for (int k = 0; k < g.nx; ++k) {
    f.values[0][k] = std::exp(-10 * (g.x(k) - 0.7) * (g.x(k) - 0.7));
    f.values[1][k] = 1 + 0.5 * std::sin(3 * g.x(k));
  }
  const double m0 = trapezoid_mass(g, f, 0), m1 = trapezoid_mass(g, f, 1);
  for (Scheme sc : {Scheme::RK4, Scheme::IMEX}) {
    SimConfig c;
    c.T = 1.0;
    c.dt = 0.4 * g.dx() * g.dx();
    c.scheme = sc;
    const RunResult r = run(heat_model(), g, f, BoundaryCondition::neumann(2), c);
    CHECK(std::abs(trapezoid_mass(g, r.final_state(), 0) - m0) <= 1e-10);
    CHECK(std::abs(trapezoid_mass(g, r.final_state(), 1) - m1) <= 1e-10);
  }
}

TEST_CASE("runs are bitwise deterministic") {
  const auto s = instantiate("PREDPREY_FRONT");
  const Grid1D g(-20, 20, 121);
  SimConfig c;
  c.T = 0.3;
  c.dt = 0.4 * s.model.min_lambda() * g.dx() * g.dx();
  c.stride = 50;
  const auto r1 = run(s.model, g, init_from_solution(s, g, 0), BoundaryCondition::neumann(2), c);
  const auto r2 = run(s.model, g, init_from_solution(s, g, 0), BoundaryCondition::neumann(2), c);
  REQUIRE(r1.snapshots.size() == r2.snapshots.size());
  for (std::size_t k = 0; k < r1.snapshots.size(); ++k) {
    CHECK(r1.snapshots[k].t == r2.snapshots[k].t);
    CHECK(r1.snapshots[k].values == r2.snapshots[k].values);
  }
}

TEST_CASE("stride controls the snapshots") {
  const Grid1D g(0, 1, 11);
  const FieldState f = constant_state({1, 1}, g);
  SimConfig c;
  c.dt = 0.001;
  c.T = 0.01;
  c.stride = 3;
  const auto r = run(heat_model(), g, f, BoundaryCondition::neumann(2), c);
  // initial, steps 3, 6, 9, final
  CHECK(r.snapshots.size() == 5);
  c.stride = 0;
  CHECK(run(heat_model(), g, f, BoundaryCondition::neumann(2), c).snapshots.size() == 2);
  c.T = 0;
  CHECK(run(heat_model(), g, f, BoundaryCondition::neumann(2), c).snapshots.size() == 1);
}

TEST_CASE("RK4 local error is fifth order in dt") {
  // spatially uniform logistic u' = u (1 - u), v' = v (1 - v)
  const DlvModel md = DlvModel::two_component(1, 1, 1, 1, -1, 0, 0, -1);
  const Grid1D g(0, 100, 11);  // coarse, so the diffusion limit does not bind
  const double u0 = 0.2;
  auto exact = [&](double t) { return u0 * std::exp(t) / (1 - u0 + u0 * std::exp(t)); };
  auto err = [&](double dt) {
    const FieldState f = step(md, g, constant_state({u0, u0}, g), BoundaryCondition::neumann(2), dt, Scheme::RK4);
    return std::abs(f.values[0][5] - exact(dt));
  };
  const double e1 = err(0.02), e2 = err(0.01);
  CHECK(std::log2(e1 / e2) >= 4.5);
}

TEST_CASE("dirichlet data from the solution is held at the ends") {
  const auto s = instantiate("CD11_COMP");
  const Grid1D g(s.window.x0, s.window.x1, 41);
  SimConfig c;
  c.T = 0.2;
  c.dt = 0.4 * s.model.min_lambda() * g.dx() * g.dx();
  const auto r = run(s.model, g, init_from_solution(s, g, 0), BoundaryCondition::from_solution(s), c);
  const FieldState& f = r.final_state();
  const Vec left = eval(s, f.t, g.A), right = eval(s, f.t, g.B);
  for (int i = 0; i < 2; ++i) {
    CHECK(f.values[i][0] == doctest::Approx(left[i]).epsilon(1e-14));
    CHECK(f.values[i][g.nx - 1] == doctest::Approx(right[i]).epsilon(1e-14));
  }
}

TEST_CASE("mismatched inputs are rejected") {
  const Grid1D g(0, 1, 11);
  const DlvModel md = heat_model();
  CHECK_THROWS_AS(step(md, g, constant_state({1, 1, 1}, g), BoundaryCondition::neumann(2), 1e-4, Scheme::RK4),
                  DimensionError);
  CHECK_THROWS_AS(step(md, g, constant_state({1, 1}, g), BoundaryCondition::neumann(3), 1e-4, Scheme::RK4),
                  DimensionError);
  CHECK_THROWS_AS(step(md, g, constant_state({1, 1}, g), BoundaryCondition::neumann(2), -1, Scheme::RK4), DlvError);
  CHECK_THROWS_AS(BoundaryCondition::dirichlet({1, 2}, {1}), DimensionError);
}

TEST_CASE("snapshot csv and manifest") {
  const Grid1D g(0, 1, 9);
  const FieldState f = constant_state({0.5, 2}, g, 0.25);
  std::ostringstream os;
  write_snapshot_csv(os, g, f);
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(header == "t,x,u1,u2");
  CHECK(row == "0.25,0,0.5,2");

  std::ostringstream ms;
  SimConfig c;
  c.dt = 1e-3;
  c.T = 0.5;
  write_run_manifest(ms, heat_model(), g, BoundaryCondition::dirichlet({0, 1}, {0, 1}), c);
  const auto j = nlohmann::json::parse(ms.str());
  CHECK(j["scheme"] == "rk4");
  CHECK(j["grid"]["nx"] == 9);
  CHECK(j["T"] == 0.5);
  CHECK(j.contains("model_hash"));
  CHECK(j["boundary"]["left"].size() == 2);
}

TEST_CASE("truncation half-width puts both tails within tolerance") {
  const auto s = instantiate("FISHER_FRONT");
  const double L = truncation_half_width(s, 1e-8);
  const Vec lo = eval(s, 0, -L), hi = eval(s, 0, L), lo2 = eval(s, 0, 0.5 - L);
  const Vec lim_lo{1.0 / 3, 2.0 / 3}, lim_hi{0, 0};
  CHECK(oracle::max_diff(lo, lim_lo) < 1e-8);
  CHECK(oracle::max_diff(hi, lim_hi) < 1e-8);
  CHECK(oracle::max_diff(lo2, lim_lo) >= 1e-8);  // smallest such L
  CHECK(truncation_half_width(s, 1e-4) < L);
  CHECK_THROWS_AS(truncation_half_width(instantiate("FISHER_COTH")), UnsupportedError);
  CHECK_THROWS_AS(truncation_half_width(instantiate("CD11_TRIG")), UnsupportedError);
}
