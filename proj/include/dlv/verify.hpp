#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dlv/solutions.hpp"

namespace dlv {

struct Check {
  std::string id;    // "<kind>:<solution id>[:<detail>]"
  bool pass = false;
  double max_residual = 0.0;
  double tol = 0.0;
  int points = 0;
  std::string detail;
};

struct VerifyOptions {
  int nt = 21, nx = 21;         // residual grid inside the solution window
  double tol = 1e-9;            // scaled PDE residual
  int inv_n = 9;                // invariant-surface grid
  double inv_tol = 1e-10;
  double tanh_tol = 1e-12;
  double asymptote_tol = 1e-10;
};

struct VerifyReport {
  std::vector<Check> checks;
  std::vector<std::string> entries;  // solution ids covered
  bool ok() const;
  int failures() const;
};

// Max scaled residual over the nt x nx grid of sol.window; points outside the validity domain are skipped.
Check residual_check(const ClosedFormSolution& sol, const VerifyOptions& opt = {});
// Time asymptote is a steady state of the model.
Check asymptote_check(const ClosedFormSolution& sol, const VerifyOptions& opt = {});
// Substitution into the tanh algebraic system.
Check tanh_check(const ClosedFormSolution& sol, const VerifyOptions& opt = {});
// Registered (operator, solution) pairs whose solution id is sol_id (all pairs when empty).
std::vector<Check> invariant_surface_checks(const std::string& sol_id = "", const VerifyOptions& opt = {});

VerifyReport verify_solution(const ClosedFormSolution& sol, const VerifyOptions& opt = {});
// Every catalog entry at its defaults plus every registered pair; a coverage check fails if an entry is missing.
VerifyReport verify_all(const VerifyOptions& opt = {});

// One line per check: id, status, max residual, tolerance, points.
void write_report(std::ostream& os, const VerifyReport& r);
void write_summary(std::ostream& os, const VerifyReport& r);

}  // namespace dlv
