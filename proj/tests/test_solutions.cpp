#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "dlv/errors.hpp"
#include "dlv/io.hpp"
#include "dlv/model.hpp"
#include "dlv/solutions.hpp"
#include "oracles.hpp"

using namespace dlv;

namespace {

double pv(const ClosedFormSolution& s, const char* k) { return s.params.at(k).value(); }

std::string restriction_message(const std::string& id, const ParamMap& p) {
  try {
    instantiate(id, p);
  } catch (const RestrictionError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("catalog has every entry with unique ids") {
  const auto& cat = catalog();
  CHECK(cat.size() >= 15);
  std::set<std::string> ids;
  for (const auto& e : cat) {
    CHECK(ids.insert(e.id).second);
    CHECK(is_catalog_id(e.id));
    CHECK(&catalog_entry(e.id) == &e);
    const ClosedFormSolution s = instantiate(e.id);
    CHECK(s.m() == e.m);
    CHECK(s.id == e.id);
    CHECK(e.tanh_type == s.tanh_form.has_value());
  }
  CHECK_FALSE(is_catalog_id("BOGUS"));
  CHECK_THROWS_AS(catalog_entry("BOGUS"), DlvError);
  CHECK_THROWS_AS(instantiate("BOGUS"), DlvError);
}

TEST_CASE("unknown parameters are rejected") {
  CHECK_THROWS_AS(instantiate("CH12_TW", {{"zz", 1}}), DlvError);
}

TEST_CASE("restriction violations name the entry and the condition") {
  const std::string pp = restriction_message("PREDPREY_FRONT", {{"a1", Number(1, 5)}, {"a2", 1}});
  CHECK(pp.find("PREDPREY_FRONT: restriction violated") == 0);
  CHECK(pp.find("a1 b2 - a2 b1") != std::string::npos);

  const std::string trig = restriction_message("CD11_TRIG", {{"a1", 4}, {"a2", 3}});
  CHECK(trig.find("CD11_TRIG: restriction violated: trig branch requires beta<0") == 0);

  const std::string hk = restriction_message("HK_SIN", {{"c1", 1}, {"b2", 1}});
  CHECK(hk.find("c1 b2 != 1") != std::string::npos);
}

TEST_CASE("derived constants of the caption instances") {
  const auto ch = instantiate("CH12_TW", {{"a", 25}, {"e", 2}});
  CHECK(ch.derived.at("alpha") == Number(11, 2));
  const Vec u0 = eval(ch, 0, 0);
  CHECK(u0[0] == doctest::Approx(12.5).epsilon(1e-15));
  CHECK(u0[1] == doctest::Approx(6.25).epsilon(1e-15));
  CHECK(u0[2] == doctest::Approx(4).epsilon(1e-15));

  const auto comp = instantiate("CD11_COMP", {{"a1", 3}, {"a2", 4}, {"lambda1", 2}, {"lambda2", 1}});
  CHECK(std::abs(comp.derived.at("beta").value() + 1.0) <= 1e-14);

  const auto cd21 = instantiate("CD21_CASE1", {{"a1", 3}, {"a2", 2}, {"lambda1", Number(3, 4)}, {"lambda2", 1}});
  CHECK(std::abs(cd21.derived.at("kappa2").value() - 6.0) <= 1e-14);

  const auto cd13 = instantiate("CD13_3COMP", {{"a1", Number(9, 2)}, {"a2", 2}, {"lambda1", 1}, {"lambda2", 2}});
  CHECK(std::abs(cd13.derived.at("delta").value() + 2.5) <= 1e-14);
}

TEST_CASE("three-species front constants are exact rationals") {
  const auto s = instantiate("CPP_FRONT", {{"a1", 11}, {"a2", 9}, {"a3", 4}, {"b1", Number(1, 2)}, {"b2", Number(1, 6)},
                                           {"b3", 5}, {"c1", 6}, {"c2", 2}, {"c3", 7}});
  CHECK(s.derived.at("lambda1") == Number(5, 2));
  CHECK(s.derived.at("lambda2") == Number(13, 6));
  CHECK(s.derived.at("lambda1").exact());
  CHECK(s.derived.at("U") == Number(147, 53));
  CHECK(s.derived.at("V") == Number(1, 53));
  CHECK(s.derived.at("W") == Number(2));
  CHECK(std::abs(s.derived.at("speed").value()) == 3.0);
  CHECK(oracle::grid_residual(s) <= 1e-9);
}

TEST_CASE("every entry solves its system on the window") {
  for (const auto& e : catalog()) {
    CAPTURE(e.id);
    CHECK(oracle::grid_residual(instantiate(e.id)) <= 1e-9);
  }
  CHECK(oracle::grid_residual(instantiate("CD21_CASE1", {{"b", Number(3, 2)}, {"c", 3}})) <= 1e-9);
}

TEST_CASE("analytic jets agree with finite differences at fourth order") {
  for (const auto& e : catalog()) {
    if (e.id.rfind("HK_", 0) == 0) continue;  // quadrature jets are checked below
    CAPTURE(e.id);
    const ClosedFormSolution s = instantiate(e.id);
    const double t = 0.5 * (s.window.t0 + s.window.t1);
    const double x = s.window.x0 + 0.37 * (s.window.x1 - s.window.x0);
    REQUIRE(s.valid(t, x));
    const double span = std::min(s.window.t1 - s.window.t0, s.window.x1 - s.window.x0);
    const double h = std::min(0.02, span / 20);
    const double e1 = oracle::fd_error(s, t, x, h), e2 = oracle::fd_error(s, t, x, h / 2);
    if (e1 > 1e-8) {
      CHECK(std::log2(e1 / e2) >= 3.5);
    } else {
      CHECK(e2 <= 1e-8);
    }
    const JetPoint j = jet(s, t, x);
    CHECK(j.u == eval(s, t, x));
  }
}

TEST_CASE("fronts and competition profiles stay nonnegative") {
  std::vector<ClosedFormSolution> sols;
  for (const auto& e : catalog())
    if (e.tanh_type && e.id != "FISHER_COTH") sols.push_back(instantiate(e.id));
  sols.push_back(instantiate("CD11_COMP"));
  sols.push_back(instantiate("CD13_3COMP"));
  sols.push_back(instantiate("CD21_CASE1", {{"b", Number(3, 2)}, {"c", 3}}));
  for (const auto& s : sols) {
    CAPTURE(s.id);
    double mn = 1e300;
    for (double t : linspace(s.window.t0, s.window.t1, 21))
      for (double x : linspace(s.window.x0, s.window.x1, 41))
        for (double v : eval(s, t, x)) mn = std::min(mn, v);
    CHECK(mn >= -1e-12);
  }
}

TEST_CASE("time asymptotes are steady states") {
  for (const auto& e : catalog()) {
    const ClosedFormSolution s = instantiate(e.id);
    const auto a = time_asymptote(s);
    if (!a) continue;
    CAPTURE(e.id);
    CHECK(is_steady_state_member(s.model, *a));
  }
}

TEST_CASE("predator-prey front tends to the coexistence state") {
  const auto s = instantiate("PREDPREY_FRONT");
  // interior zero of both affine rows, by Cramer's rule
  const DlvModel& md = s.model;
  const double det = md.b(0, 0) * md.b(1, 1) - md.b(0, 1) * md.b(1, 0);
  const double u = (-md.a(0) * md.b(1, 1) + md.a(1) * md.b(0, 1)) / det;
  const double v = (-md.a(1) * md.b(0, 0) + md.a(0) * md.b(1, 0)) / det;
  REQUIRE(time_asymptote(s));
  CHECK((*time_asymptote(s))[0] == doctest::Approx(u).epsilon(1e-12));
  CHECK((*time_asymptote(s))[1] == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("three-species survivors are selected by v0") {
  for (double v0 : {0.0, 1.5, 2.0}) {
    CAPTURE(v0);
    const auto s = instantiate("CD13_3COMP", {{"v0", v0}});
    const auto a = time_asymptote(s);
    REQUIRE(a);
    const double c = pv(s, "c"), e = pv(s, "e"), a2 = pv(s, "a2");
    CHECK((*a)[0] == doctest::Approx(0.0));
    CHECK((*a)[1] == doctest::Approx(v0 / c).epsilon(1e-14));
    CHECK((*a)[2] == doctest::Approx((a2 - v0) / e).epsilon(1e-14));
    CHECK(is_steady_state_member(s.model, *a));
    // and the closed form really gets there
    const Vec late = eval(s, 20.0, 0.5 * (s.window.x0 + s.window.x1));
    CHECK(oracle::max_diff(late, *a) <= 1e-10);
  }
}

TEST_CASE("weighted-coupling asymptote at alternative parameters") {
  const auto s = instantiate("CD21_CASE1", {{"lambda1", 1}, {"lambda2", Number(3, 4)}, {"a1", 2}, {"a2", 3}});
  CHECK(oracle::grid_residual(s) <= 1e-9);
  const auto a = time_asymptote(s);
  if (a) CHECK(is_steady_state_member(s.model, *a));
}

TEST_CASE("boundary behaviour of the bounded-interval entries") {
  const auto cd21 = instantiate("CD21_CASE1", {{"b", Number(3, 2)}, {"c", 3}});
  const double kappa = cd21.derived.at("kappa").value();
  for (int m = 0; m < 2; ++m) {
    const double x = std::numbers::pi / kappa * (0.5 + m);
    for (double t : {0.0, 0.1, 0.3}) {
      if (!cd21.valid(t, x)) continue;
      const JetPoint j = jet(cd21, t, x);
      CHECK(std::abs(j.u_x[0]) <= 1e-12 * (1 + oracle::max_abs(j.u)));
      CHECK(std::abs(j.u_x[1]) <= 1e-12 * (1 + oracle::max_abs(j.u)));
    }
  }
  const auto cd13 = instantiate("CD13_3COMP");
  const double L = std::numbers::pi / cd13.derived.at("s").value();
  for (double t : {0.0, 0.5, 1.0}) {
    for (double x : {0.0, L}) {
      const Vec u = eval(cd13, t, x);
      CHECK(std::abs(u[0]) <= 1e-14);
      CHECK(u[1] == doctest::Approx(2.0));
      CHECK(u[2] == doctest::Approx(3.5));
    }
  }
}

TEST_CASE("heat-kernel family reproduces the sine closed form") {
  const auto fam = instantiate("HK_FAMILY");
  const auto sin = instantiate("HK_SIN");
  double d = 0.0;
  for (double t : linspace(0, 1, 21))
    for (double x : linspace(-std::numbers::pi, std::numbers::pi, 21)) d = std::max(d, oracle::max_diff(eval(fam, t, x), eval(sin, t, x)));
  CHECK(d <= 1e-8);

  // zero profile gives the constant solution
  const auto zero = instantiate("HK_FAMILY", {{"beta", 0}});
  CHECK(oracle::max_diff(eval(zero, 0.7, 0.3), *time_asymptote(zero)) <= 1e-14);
}

TEST_CASE("heat-kernel combination satisfies linear diffusion") {
  for (const char* id : {"HK_FAMILY", "HK_SIN"}) {
    CAPTURE(id);
    const auto s = instantiate(id);
    const Vec y = heat_kernel_combination(s.model);
    REQUIRE(y.size() == 3);
    CHECK(y[2] == 1.0);
    const double lam = s.model.lambda(0);
    CHECK(s.model.lambda(1) == lam);
    CHECK(s.model.lambda(2) == lam);
    double r = 0.0;
    for (double t : linspace(0.05, 1, 11))
      for (double x : linspace(-3, 3, 11)) {
        const JetPoint j = jet(s, t, x);
        double Ut = 0.0, Uxx = 0.0;
        for (int i = 0; i < 3; ++i) {
          Ut += y[i] * j.u_t[i];
          Uxx += y[i] * j.u_xx[i];
        }
        r = std::max(r, std::abs(lam * Ut - Uxx));
      }
    CHECK(r <= 1e-8);
  }
}

TEST_CASE("gaussian heat profile is a solution too") {
  const auto s = instantiate("HK_FAMILY", {{"profile", 1}});
  CHECK(oracle::grid_residual(s) <= 1e-9);
}

TEST_CASE("FISHER_COTH rejects its singular line") {
  const auto s = instantiate("FISHER_COTH");
  const double alpha = s.derived.at("alpha").value();
  CHECK_FALSE(s.valid(0.5, alpha * 0.5));
  CHECK_THROWS_AS(eval(s, 0.5, alpha * 0.5), DomainError);
}

TEST_CASE("solution spec and grid csv") {
  const SolutionSpec spec{"CH12_TW", {{"a", 25}, {"e", 2}}};
  const SolutionSpec back = spec_from_json(spec_to_json(spec));
  CHECK(back.id == "CH12_TW");
  CHECK(back.params.at("a") == Number(25));

  std::ostringstream os;
  write_grid_csv(os, instantiate("CH12_TW", back.params), {0.0}, {-1.0, 0.0});
  std::istringstream is(os.str());
  std::string header, r1, r2;
  std::getline(is, header);
  std::getline(is, r1);
  std::getline(is, r2);
  CHECK(header == "t,x,u1,u2,u3");
  CHECK(r2 == "0,0,12.5,6.25,4");
}
