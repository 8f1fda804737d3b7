#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dlv/errors.hpp"
#include "dlv/model.hpp"
#include "dlv/solutions.hpp"

namespace dlv {

struct Grid1D {
  double A = 0.0, B = 1.0;
  int nx = 8;

  Grid1D() = default;
  Grid1D(double a, double b, int n);  // throws DlvError unless nx >= 8 and B > A
  double dx() const { return (B - A) / (nx - 1); }
  double x(int k) const { return k == nx - 1 ? B : A + k * dx(); }
  std::vector<double> nodes() const;
};

struct FieldState {
  double t = 0.0;
  std::vector<Vec> values;  // values[i][k]: component i at node k
};

struct BoundarySpec {
  enum class Kind { NeumannZero, DirichletConstant, DirichletFromSolution };
  Kind kind = Kind::NeumannZero;
  double value = 0.0;  // DirichletConstant
  SolutionPtr sol;     // DirichletFromSolution

  static BoundarySpec neumann() { return {}; }
  static BoundarySpec constant(double v) { return {Kind::DirichletConstant, v, nullptr}; }
  static BoundarySpec from_solution(SolutionPtr s) { return {Kind::DirichletFromSolution, 0.0, std::move(s)}; }
};

// Per end, per component.
struct BoundaryCondition {
  std::vector<BoundarySpec> left, right;

  static BoundaryCondition neumann(int m);
  static BoundaryCondition dirichlet(const Vec& left, const Vec& right);
  static BoundaryCondition from_solution(const ClosedFormSolution& sol);
};

enum class Scheme { RK4, IMEX };
std::string scheme_name(Scheme s);

struct SimConfig {
  double dt = 1e-3;
  double T = 1.0;
  Scheme scheme = Scheme::RK4;
  int stride = 0;  // snapshot every stride steps; 0 keeps only the initial and final states
};

// Explicit step too large for the diffusion limit dt <= 0.9 min(lambda) dx^2 / 2.
class CflError : public DlvError {
 public:
  CflError(double dt, double suggested);
  double dt() const { return dt_; }
  double suggested_dt() const { return suggested_; }

 private:
  double dt_, suggested_;
};

double max_stable_dt(const DlvModel& model, const Grid1D& grid);

// Smallest L (in steps of 1/2) with |u(0, +-L) - limit| < tol for both tails of a tanh front centred at x = 0.
// UnsupportedError for entries without a tanh form or with a coth form.
double truncation_half_width(const ClosedFormSolution& sol, double tol = 1e-8);

// Nodewise evaluation; DomainError names the first node outside the solution's validity domain.
FieldState init_from_solution(const ClosedFormSolution& sol, const Grid1D& grid, double t0);
FieldState constant_state(const Vec& u, const Grid1D& grid, double t0 = 0.0);

// One step.  CflError for an explicit step above the limit; BlowUpError if a value becomes non-finite
// or exceeds 1e150 in magnitude.
FieldState step(const DlvModel& model, const Grid1D& grid, const FieldState& s, const BoundaryCondition& bc, double dt,
                Scheme scheme);

struct RunResult {
  std::vector<FieldState> snapshots;  // includes the initial state
  bool blew_up = false;
  double blowup_time = 0.0;
  std::string message;
  const FieldState& final_state() const { return snapshots.back(); }
};

// Advances to cfg.T (the last step is shortened to land on T).  On blow-up the partial trajectory is
// returned with blew_up set.
RunResult run(const DlvModel& model, const Grid1D& grid, const FieldState& s0, const BoundaryCondition& bc,
              const SimConfig& cfg);

// (L-infinity, L2) over all components; L2 uses the trapezoid rule in x.
std::pair<double, double> error_vs_solution(const Grid1D& grid, const FieldState& s, const ClosedFormSolution& sol);

// Trapezoid integral of component i.
double trapezoid_mass(const Grid1D& grid, const FieldState& s, int i);

struct ConvergenceStudy {
  std::vector<int> nx;
  std::vector<double> dx, dt, linf;
  double order = 0.0;  // least-squares slope of log(linf) against log(dx)
};

// Runs sol's model from t0 to t0 + T on each grid with dt = dt_factor min(lambda) dx^2 (rounded so the steps
// land on the final time) and compares with sol at the final time.
ConvergenceStudy convergence_order(const ClosedFormSolution& sol, double A, double B, const std::vector<int>& nxs,
                                   double T, const BoundaryCondition& bc, double t0 = 0.0, double dt_factor = 0.4,
                                   Scheme scheme = Scheme::RK4);

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

// Snapshot CSV (t,x,u1..) and a JSON run manifest.
void write_snapshot_csv(std::ostream& os, const Grid1D& grid, const FieldState& s, bool header = true);
void write_run_manifest(std::ostream& os, const DlvModel& model, const Grid1D& grid, const BoundaryCondition& bc,
                        const SimConfig& cfg);

}  // namespace dlv
