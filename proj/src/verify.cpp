#include "dlv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "dlv/model.hpp"
#include "dlv/number.hpp"
#include "dlv/symmetry.hpp"
#include "dlv/tanh_engine.hpp"

namespace dlv {

namespace {

Check finish(Check c) {
  c.pass = c.points > 0 && std::isfinite(c.max_residual) && c.max_residual <= c.tol;
  if (c.points == 0 && c.detail.empty()) c.detail = "no sample points inside the validity domain";
  return c;
}

}  // namespace

bool VerifyReport::ok() const { return failures() == 0; }

int VerifyReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

Check residual_check(const ClosedFormSolution& sol, const VerifyOptions& opt) {
  Check c;
  c.id = "residual:" + sol.id;
  c.tol = opt.tol;
  int skipped = 0;
  const auto& w = sol.window;
  for (double t : linspace(w.t0, w.t1, opt.nt)) {
    for (double x : linspace(w.x0, w.x1, opt.nx)) {
      if (!sol.valid(t, x)) {
        ++skipped;
        continue;
      }
      c.max_residual = std::max(c.max_residual, scaled_residual(sol.model, jet(sol, t, x)));
      ++c.points;
    }
  }
  if (skipped > 0) c.detail = std::to_string(skipped) + " points outside the validity domain skipped";
  return finish(c);
}

Check asymptote_check(const ClosedFormSolution& sol, const VerifyOptions& opt) {
  Check c;
  c.id = "asymptote:" + sol.id;
  c.tol = opt.asymptote_tol;
  const auto a = time_asymptote(sol);
  if (!a) {
    c.pass = true;
    c.detail = "no time asymptote";
    return c;
  }
  c.points = 1;
  // Distance to the nearest listed steady state; membership also accepts degenerate families.
  double best = INFINITY;
  for (const auto& s : steady_states(sol.model).states) {
    double d = 0.0;
    for (std::size_t i = 0; i < a->size(); ++i) d = std::max(d, std::abs(s.u[i] - (*a)[i]));
    best = std::min(best, d);
  }
  const bool member = is_steady_state_member(sol.model, *a, opt.asymptote_tol);
  std::string v;
  for (double x : *a) v += (v.empty() ? "" : ",") + format_double(x);
  c.detail = "asymptote (" + v + ")";
  if (member && best > opt.asymptote_tol) {
    c.detail += " in a degenerate steady family";
    best = 0.0;
  }
  c.max_residual = best;
  c.pass = member;
  return c;
}

Check tanh_check(const ClosedFormSolution& sol, const VerifyOptions& opt) {
  Check c;
  c.id = "tanh:" + sol.id;
  c.tol = opt.tanh_tol;
  const InstanceReport r = verify_tanh_solution(sol);
  c.points = r.equations;
  c.max_residual = r.max_residual;
  c.detail = std::to_string(r.equations) + " coefficient equations";
  return finish(c);
}

namespace {

Check pair_check(const RegisteredPair& p, const VerifyOptions& opt) {
  Check c;
  c.id = "invariant:" + p.op_id + ":" + p.label;
  c.tol = opt.inv_tol;
  const auto& w = p.sol.window;
  for (double t : linspace(w.t0, w.t1, opt.inv_n)) {
    for (double x : linspace(w.x0, w.x1, opt.inv_n)) {
      if (!p.sol.valid(t, x)) continue;
      if (!p.op.in_domain(t, x, eval(p.sol, t, x))) continue;
      for (double v : invariant_surface_residual(p.op, p.sol, t, x)) c.max_residual = std::max(c.max_residual, std::abs(v));
      ++c.points;
    }
  }
  return finish(c);
}

}  // namespace

std::vector<Check> invariant_surface_checks(const std::string& sol_id, const VerifyOptions& opt) {
  std::vector<Check> out;
  for (const auto& p : registered_pairs())
    if (sol_id.empty() || p.sol.id == sol_id) out.push_back(pair_check(p, opt));
  return out;
}

VerifyReport verify_solution(const ClosedFormSolution& sol, const VerifyOptions& opt) {
  VerifyReport r;
  r.entries.push_back(sol.id);
  r.checks.push_back(residual_check(sol, opt));
  if (time_asymptote(sol)) r.checks.push_back(asymptote_check(sol, opt));
  if (sol.tanh_form) r.checks.push_back(tanh_check(sol, opt));
  for (const auto& p : pairs_for(sol, sol.id)) r.checks.push_back(pair_check(p, opt));
  return r;
}

VerifyReport verify_all(const VerifyOptions& opt) {
  VerifyReport r;
  std::set<std::string> covered;
  for (const auto& e : catalog()) {
    Check failed;
    try {
      const ClosedFormSolution sol = instantiate(e.id);
      r.entries.push_back(e.id);
      covered.insert(e.id);
      r.checks.push_back(residual_check(sol, opt));
      if (time_asymptote(sol)) r.checks.push_back(asymptote_check(sol, opt));
      if (sol.tanh_form) r.checks.push_back(tanh_check(sol, opt));
    } catch (const std::exception& ex) {
      failed.id = "instantiate:" + e.id;
      failed.detail = ex.what();
      r.checks.push_back(failed);
    }
  }
  for (auto& c : invariant_surface_checks("", opt)) r.checks.push_back(std::move(c));
  Check cov;
  cov.id = "coverage:catalog";
  cov.points = static_cast<int>(covered.size());
  cov.pass = covered.size() == catalog().size() && covered.size() >= 15;
  cov.detail = std::to_string(covered.size()) + " of " + std::to_string(catalog().size()) + " entries";
  r.checks.push_back(cov);
  return r;
}

void write_report(std::ostream& os, const VerifyReport& r) {
  for (const auto& c : r.checks) {
    os << "check=" << c.id << " status=" << (c.pass ? "PASS" : "FAIL") << " max_residual=" << format_double(c.max_residual)
       << " tol=" << format_double(c.tol) << " points=" << c.points;
    if (!c.detail.empty()) os << " detail=\"" << c.detail << "\"";
    os << "\n";
  }
}

void write_summary(std::ostream& os, const VerifyReport& r) {
  os << r.entries.size() << " entries, " << r.checks.size() << " checks, " << r.failures() << " failed\n";
}

}  // namespace dlv
