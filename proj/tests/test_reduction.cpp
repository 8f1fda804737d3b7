#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dlv/errors.hpp"
#include "dlv/reduction.hpp"
#include "oracles.hpp"

using namespace dlv;

TEST_CASE("every reducible entry has a triple that lifts back exactly") {
  const auto triples = reduction_triples();
  CHECK(triples.size() >= 14);
  for (const auto& tr : triples) {
    CAPTURE(tr.label);
    const ClosedFormSolution lifted = tr.ansatz.lift(tr.profile);
    const double d = lift_difference(lifted, tr.sol);
    CHECK(d >= 0.0);
    CHECK(d <= 1e-12);
    const ConsistencyReport rep = consistency_check(tr.ansatz, tr.profile, tr.sol.window);
    CHECK(rep.reduced_residual <= 1e-10);
    CHECK(rep.pde_residual <= 1e-9);
    CHECK(rep.consistent);
  }
}

TEST_CASE("heat-kernel entries have no reduction") {
  CHECK_THROWS_AS(reduction_triple(instantiate("HK_SIN")), UnsupportedError);
}

TEST_CASE("Fisher profile solves the travelling-wave system") {
  const auto s = instantiate("FISHER_FRONT");
  const ReducedSystem rs = tw_reduce(s.model, s.tanh_form->alpha);
  const Profile p = tanh_profile(*s.tanh_form);
  for (double w : linspace(p.lo, p.hi, 41)) CHECK(oracle::max_abs(reduced_residual(rs, p, w)) <= 1e-13);
  // the profile at omega is the solution at (t, omega + alpha t)
  const double t = 0.4, w = 1.3;
  CHECK(oracle::max_diff(p.eval(w).phi, eval(s, t, w + s.tanh_form->alpha * t)) <= 1e-14);
}

TEST_CASE("autonomous reduced systems are shift invariant") {
  const auto s = instantiate("FISHER_FRONT");
  const ReducedSystem rs = tw_reduce(s.model, s.tanh_form->alpha);
  const Profile p = shift_profile(tanh_profile(*s.tanh_form), 2.5);
  CHECK(p.lo == doctest::Approx(tanh_profile(*s.tanh_form).lo + 2.5));
  for (double w : linspace(p.lo, p.hi, 21)) CHECK(oracle::max_abs(reduced_residual(rs, p, w)) <= 1e-13);
}

TEST_CASE("integrated g-branch profile matches the closed form") {
  const auto s = instantiate("CD21_CASE1", {{"b", Number(3, 2)}, {"c", 3}});
  const auto tr = reduction_triple(s);
  const double hi = std::min(2.0, tr.profile.hi);
  const Profile num = integrate_reduced(tr.ansatz.reduced, tr.profile.eval(0).phi, 0, hi, {1e-12});
  CHECK_FALSE(num.partial);
  double e = 0.0;
  for (double t : linspace(0, hi, 101)) e = std::max(e, oracle::max_diff(num.eval(t).phi, tr.profile.eval(t).phi));
  CHECK(e <= 1e-7);
}

TEST_CASE("harmonic oscillator: adaptive and fixed-step integration") {
  const ReducedSystem rs = reduced_linear(-1, 1);  // phi'' + phi = 0
  const Profile p = integrate_reduced(rs, {0, 1}, 0, 6, {1e-10});
  double e = 0.0;
  for (double w : linspace(0, 6, 301)) e = std::max(e, std::abs(p.eval(w).phi[0] - std::sin(w)));
  CHECK(e <= 1e-8);
  CHECK(p.interpolated);

  std::vector<double> hs, errs;
  for (double h : {0.1, 0.05, 0.025}) {
    IntegrateOptions o;
    o.fixed_step = h;
    const Profile q = integrate_reduced(rs, {0, 1}, 0, 6, o);
    hs.push_back(std::log(h));
    errs.push_back(std::log(std::abs(q.eval(6).phi[0] - std::sin(6.0))));
  }
  CHECK((errs[0] - errs[2]) / (hs[0] - hs[2]) >= 3.5);
}

TEST_CASE("blow-up yields a partial profile with a diagnostic") {
  // phi'' = phi^2 from phi(0) = 1 blows up in finite time
  const DlvModel md = DlvModel::two_component(1, 1, 0, 0, -1, 0, 0, -1);
  const ReducedSystem rs = tw_reduce(md, 0.0);
  const Profile p = integrate_reduced(rs, {1, 0, 0, 0}, 0, 10);
  CHECK(p.partial);
  CHECK(p.hi < 10);
  CHECK_FALSE(p.diagnostic.empty());
}

TEST_CASE("consistency check catches a wrong profile") {
  const auto s = instantiate("FISHER_FRONT");
  const auto tr = reduction_triple(s);
  const ConsistencyReport rep = consistency_check(tr.ansatz, offset_profile(tr.profile, 0.01), s.window);
  CHECK(rep.reduced_residual > 1e-3);
  CHECK(rep.pde_residual > 1e-3);
}

TEST_CASE("numerical three-species reduction lifts to a PDE solution") {
  const auto s = instantiate("CD13_3COMP");
  const Ansatz an = build_ansatz(AnsatzId::A73, s.model, {{"alpha", -1}});
  const Profile p = integrate_reduced(an.reduced, {0.1, 1.0, 0.4, 0, 0.1, -0.1}, 0, 2, {1e-11});
  CHECK_FALSE(p.partial);
  const ConsistencyReport rep = consistency_check(an, p, Window{0, 1, 0, 2});
  CHECK(rep.pde_residual <= 1e-6);
  CHECK(rep.consistent);
}

TEST_CASE("build_ansatz rejects models outside its class") {
  const DlvModel generic = DlvModel::two_component(1, 2, 1, 2, -1, -2, -3, -4);
  CHECK_THROWS_AS(build_ansatz(AnsatzId::A64, generic), RestrictionError);
  CHECK_THROWS_AS(build_ansatz(AnsatzId::A619, generic, {{"alpha0", 1}, {"alpha1", 1}, {"alpha2", 0}}),
                  RestrictionError);
  CHECK_THROWS_AS(build_ansatz(AnsatzId::A73, instantiate("CPP_FRONT").model, {{"alpha", 1}}), RestrictionError);
}

TEST_CASE("ansatz names round-trip") {
  for (AnsatzId id : {AnsatzId::TW, AnsatzId::A64, AnsatzId::A619, AnsatzId::A620, AnsatzId::A621, AnsatzId::A73})
    CHECK(ansatz_from_name(ansatz_name(id)) == id);
}

TEST_CASE("profile csv has one row per sample") {
  std::ostringstream os;
  write_profile_csv(os, constant_profile({1.0, 2.0}), {0.0, 0.5, 1.0});
  std::istringstream is(os.str());
  int lines = 0;
  for (std::string l; std::getline(is, l);) ++lines;
  CHECK(lines == 4);
}
