#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "dlv/errors.hpp"
#include "dlv/symmetry.hpp"
#include "oracles.hpp"

using namespace dlv;

namespace {

std::set<std::string> ids_of(const std::vector<SymmetryOperator>& ops) {
  std::set<std::string> s;
  for (const auto& op : ops) s.insert(op.id);
  return s;
}

double worst_residual(const ClosedFormSolution& s, int n = 9) {
  double w = 0.0;
  for (double t : linspace(s.window.t0, s.window.t1, n))
    for (double x : linspace(s.window.x0, s.window.x1, n))
      if (s.valid(t, x)) w = std::max(w, scaled_residual(s.model, jet(s, t, x)));
  return w;
}

double max_invariant(const SymmetryOperator& op, const ClosedFormSolution& s, int n = 9) {
  double w = 0.0;
  for (double t : linspace(s.window.t0, s.window.t1, n))
    for (double x : linspace(s.window.x0, s.window.x1, n)) {
      if (!s.valid(t, x) || !op.in_domain(t, x, eval(s, t, x))) continue;
      w = std::max(w, oracle::max_abs(invariant_surface_residual(op, s, t, x)));
    }
  return w;
}

// max |a - b| over b's window
double field_diff(const ClosedFormSolution& a, const ClosedFormSolution& b) {
  double d = 0.0;
  for (double t : linspace(b.window.t0, b.window.t1, 7))
    for (double x : linspace(b.window.x0, b.window.x1, 7))
      if (a.valid(t, x) && b.valid(t, x)) d = std::max(d, oracle::max_diff(eval(a, t, x), eval(b, t, x)));
  return d;
}

}  // namespace

TEST_CASE("generic system has only translations") {
  const DlvModel md = DlvModel::two_component(1, 2, 1, 2, -1, -2, -3, -4);
  CHECK(ids_of(operator_catalog(md)) == std::set<std::string>{"P_t", "P_x"});
}

TEST_CASE("purely quadratic semi-coupled system gains dilation and v scaling") {
  const auto s = power_solution(1, 2, -1, 3);
  const auto ids = ids_of(operator_catalog(s.model));
  CHECK(ids.count("D"));
  CHECK(ids.count("v_dv"));
  CHECK_FALSE(ids.count("u_dv"));
}

TEST_CASE("u d_v needs equal diffusion and equal rows") {
  const auto s = case5_solution(2, -1);
  const auto ids = ids_of(operator_catalog(s.model));
  CHECK(ids.count("u_dv"));
  CHECK(ids.count("R"));
  const auto f = case4_solution(1, -1);
  const auto fids = ids_of(operator_catalog(f.model));
  CHECK(fids.count("u_dv"));
  CHECK(fids.count("E_dv"));
  CHECK_FALSE(fids.count("R"));
}

TEST_CASE("equal-coupling system carries its Q-conditional operators") {
  const auto s = instantiate("CD11_TRIG");
  const auto ids = ids_of(operator_catalog(s.model));
  CHECK(ids.count("QC1_1"));
  CHECK(ids.count("P_t"));
}

TEST_CASE("dilation coefficients") {
  const auto D = dilation(2);
  const OperatorCoeffs c = D.eval(1.5, -2.0, {3.0, 0.5});
  CHECK(c.xi0 == 3.0);
  CHECK(c.xi1 == -2.0);
  CHECK(c.eta[0] == -6.0);
  CHECK(c.eta[1] == -1.0);
}

TEST_CASE("equal-coupling operator coefficients") {
  const DlvModel md = DlvModel::two_component(2, 1, 3, 4, 1, 1, 1, 1);
  const auto op = equal_coupling_affine(md);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int k = 0; k < 10; ++k) {
    const Vec u{U(rng), U(rng)};
    const OperatorCoeffs c = op.eval(0.3, 0.1, u);
    const double f = -(3 * u[1] + 4 * u[0] + 12);
    CHECK(c.xi0 == doctest::Approx(1.0));
    CHECK(c.xi1 == doctest::Approx(0.0));
    CHECK(c.eta[0] == doctest::Approx(f));
    CHECK(c.eta[1] == doctest::Approx(-f));
  }
  CHECK_THROWS_AS(equal_coupling_affine(DlvModel::two_component(2, 1, 3, 3, 1, 1, 1, 1)), RestrictionError);
  CHECK_THROWS_AS(equal_coupling_affine(DlvModel::two_component(1, 1, 3, 4, 1, 1, 1, 1)), RestrictionError);
}

TEST_CASE("documentation-only operators are listed") {
  CHECK_FALSE(documentation_only_operators().empty());
}

TEST_CASE("registered pairs satisfy their invariant-surface conditions") {
  const auto pairs = registered_pairs();
  std::set<std::string> ops;
  for (const auto& p : pairs) {
    CAPTURE(p.label);
    CAPTURE(p.op_id);
    ops.insert(p.op_id);
    CHECK(max_invariant(p.op, p.sol) <= 1e-10);
  }
  CHECK(ops.count("QC1_1"));
  CHECK(ops.count("Qu_1"));
  CHECK(ops.count("Q4_1"));
}

TEST_CASE("a translation does not leave a front invariant") {
  const auto s = instantiate("FISHER_FRONT");
  CHECK(max_invariant(translation_x(2), s) > 1e-3);
  CHECK(max_invariant(front_operator(2, s.tanh_form->alpha), s) <= 1e-12);
}

TEST_CASE("Lie flows map solutions to solutions") {
  const auto base = power_solution(1, 2, -1, 3);
  REQUIRE(worst_residual(base) <= 1e-9);
  for (const auto& op : operator_catalog(base.model)) {
    if (!op.flow) continue;
    for (double e : {-1.0, -0.5, 0.5, 1.0}) {
      CAPTURE(op.id);
      CAPTURE(e);
      CHECK(worst_residual(lie_transform(op, e, base)) <= 1e-9);
    }
  }
}

TEST_CASE("Lie flows obey the group law") {
  const auto base = power_solution(1, 2, -1, 3);
  for (const auto& op : operator_catalog(base.model)) {
    if (!op.flow) continue;
    CAPTURE(op.id);
    const auto two = lie_transform(op, 0.3, lie_transform(op, 0.4, base));
    const auto one = lie_transform(op, 0.7, base);
    CHECK(field_diff(two, one) <= 1e-12);
    CHECK(field_diff(lie_transform(op, 0.0, base), base) <= 1e-15);
  }
}

TEST_CASE("flows on the equal-diffusion systems") {
  for (const auto& base : {case5_solution(2, -1), case4_solution(1, -1)}) {
    for (const auto& op : operator_catalog(base.model)) {
      if (!op.flow) continue;
      CAPTURE(op.id);
      CHECK(worst_residual(lie_transform(op, 0.5, base)) <= 1e-9);
      CHECK(field_diff(lie_transform(op, -0.5, lie_transform(op, 0.5, base)), base) <= 1e-12);
    }
  }
}

TEST_CASE("lie_transform checks applicability") {
  const auto fisher = instantiate("FISHER_FRONT");
  CHECK_THROWS_AS(lie_transform(dilation(2), 0.5, fisher), RestrictionError);
  CHECK_THROWS_AS(lie_transform(translation_t(3), 0.5, fisher), DimensionError);
  auto op = translation_t(2);
  op.flow = nullptr;
  CHECK_THROWS_AS(lie_transform(op, 0.5, fisher), UnsupportedError);
}

TEST_CASE("g-functions solve their heat equations") {
  const auto s = instantiate("CD21_CASE1");
  const auto [g1, g2] = g_function(s.model, 2, 1, 0.5);
  CHECK(g1.branch == GFunction::Branch::Trig);
  CHECK(g1.kappa == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  for (const GFunction& g : {g1, g2})
    for (double t : {0.0, 0.2})
      for (double x : {-1.0, 0.3, 1.1})
        CHECK(g.lambda * g.g_t(t, x) == doctest::Approx(g.g_xx(t, x) + g.K * g.g(t, x)).epsilon(1e-12));

  // second coupling row is lambda2/lambda1 times the first; K = -1 < 0
  const DlvModel md = DlvModel::two_component(1, Number(3, 4), 3, 2, -1, -1, Number(-3, 4), Number(-3, 4));
  const auto [h1, h2] = g_function(md, 1, 1, 1);
  CHECK(h1.branch == GFunction::Branch::Exp);
  for (double x : {-1.0, 0.5})
    CHECK(h1.lambda * h1.g_t(0.1, x) == doctest::Approx(h1.g_xx(0.1, x) + h1.K * h1.g(0.1, x)).epsilon(1e-12));
  (void)h2;
}

TEST_CASE("Q4 operators need distinct diffusion") {
  const DlvModel md = DlvModel::three_component(1, 1, 2, {1, -1, -1, -1}, {2, -1, -1, -1}, {3, -1, -1, -1});
  CHECK_THROWS_AS(q4_operator(md, 1, 1.0), RestrictionError);
}
