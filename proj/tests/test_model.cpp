#include <doctest.h>

#include <cmath>
#include <random>

#include "dlv/errors.hpp"
#include "dlv/io.hpp"
#include "dlv/model.hpp"
#include "dlv/solutions.hpp"
#include "oracles.hpp"

using namespace dlv;

namespace {

DlvModel sample_model() { return DlvModel::two_component(1, 2, 1, Number(3, 2), -1, Number(-1, 2), -2, -1); }

}  // namespace

TEST_CASE("reaction matches the written-out sum") {
  const DlvModel md = sample_model();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int k = 0; k < 50; ++k) {
    const Vec u{U(rng), U(rng)};
    CHECK(oracle::max_diff(reaction(md, u), oracle::reaction(md, u)) <= 1e-14);
  }
  const Vec r = reaction(md, {2.0, 0.0});
  CHECK(r[1] == 0.0);
  CHECK(r[0] == doctest::Approx(2.0 * (1.0 - 2.0)));
}

TEST_CASE("pde_residual is affine in the jet with the reaction Jacobian") {
  const DlvModel md = DlvModel::three_component(1, 2, 3, {1, -1, 2, 0}, {0, 1, -1, Number(1, 3)}, {2, 0, 1, -1});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 20; ++k) {
    JetPoint j = JetPoint::zeros(3, 0, 0);
    for (int i = 0; i < 3; ++i) {
      j.u[i] = U(rng);
      j.u_t[i] = U(rng);
      j.u_xx[i] = U(rng);
    }
    const Vec S = pde_residual(md, j);
    const Vec R = oracle::reaction(md, j.u);
    for (int i = 0; i < 3; ++i) CHECK(S[i] == doctest::Approx(md.lambda(i) * j.u_t[i] - j.u_xx[i] - R[i]).epsilon(1e-13));

    // directional derivative in u against the analytic Jacobian
    const Vec du{U(rng), U(rng), U(rng)};
    const double h = 1e-6;
    JetPoint jp = j, jm = j;
    for (int i = 0; i < 3; ++i) {
      jp.u[i] += h * du[i];
      jm.u[i] -= h * du[i];
    }
    const Vec Sp = pde_residual(md, jp), Sm = pde_residual(md, jm);
    for (int i = 0; i < 3; ++i) {
      double expect = 0.0;
      for (int q = 0; q < 3; ++q) expect -= oracle::reaction_jacobian(md, j.u, i, q) * du[q];
      CHECK((Sp[i] - Sm[i]) / (2 * h) == doctest::Approx(expect).epsilon(1e-7));
    }
  }
}

TEST_CASE("scaled residual of an exact steady state is zero") {
  const DlvModel md = sample_model();
  for (const auto& s : steady_states(md).states) {
    JetPoint j = JetPoint::zeros(2, 0, 0);
    j.u = s.u;
    CHECK(scaled_residual(md, j) <= 1e-14);
  }
}

TEST_CASE("build rejects inconsistent input") {
  CHECK_THROWS_AS(DlvModel::build({1}, {1}, {{1}}), DimensionError);
  CHECK_THROWS_AS(DlvModel::build({1, 1}, {1}, {{1, 1}, {1, 1}}), DimensionError);
  CHECK_THROWS_AS(DlvModel::build({1, 1}, {1, 1}, {{1, 1}, {1}}), DimensionError);
  CHECK_THROWS_AS(DlvModel::two_component(0, 1, 1, 1, 1, 1, 1, 1), DimensionError);
  CHECK_THROWS_AS(DlvModel::two_component(-1, 1, 1, 1, 1, 1, 1, 1), DimensionError);
}

TEST_CASE("rescale_components maps solutions of the original system") {
  const DlvModel md = sample_model();
  const std::vector<Number> s{2, Number(1, 3)};
  const DlvModel sc = md.rescale_components(s);
  CHECK(sc.b_exact()[0][1] == Number(-1, 6));
  CHECK(sc.b_exact()[1][0] == Number(-4));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 20; ++k) {
    JetPoint J = JetPoint::zeros(2, 0, 0);
    for (int i = 0; i < 2; ++i) {
      J.u[i] = U(rng);
      J.u_t[i] = U(rng);
      J.u_xx[i] = U(rng);
    }
    JetPoint j = J;
    for (int i = 0; i < 2; ++i) {
      j.u[i] *= s[i].value();
      j.u_t[i] *= s[i].value();
      j.u_xx[i] *= s[i].value();
    }
    const Vec Sj = pde_residual(md, j), SJ = pde_residual(sc, J);
    for (int i = 0; i < 2; ++i) CHECK(Sj[i] == doctest::Approx(s[i].value() * SJ[i]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(md.rescale_components({1}), DimensionError);
}

TEST_CASE("nondegeneracy flags") {
  const auto ok = nondegeneracy(sample_model());
  CHECK(ok.applicable);
  CHECK(ok.pass);
  const auto bad = nondegeneracy(DlvModel::two_component(1, 1, 1, 1, 0, 0, 1, 1));
  CHECK(bad.applicable);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.flags.size() == 3);
  CHECK_FALSE(bad.flags[0].second);
  CHECK(bad.flags[1].second);
}

TEST_CASE("steady states are zeros of the reaction") {
  const DlvModel md = instantiate("CD21_CASE1", {{"b", Number(3, 2)}, {"c", 3}}).model;
  const auto rep = steady_states(md);
  auto has = [&](const Vec& u) {
    for (const auto& s : rep.states)
      if (oracle::max_diff(s.u, u) <= 1e-12) return true;
    return false;
  };
  CHECK(has({0, 0}));
  CHECK(has({2, 0}));
  CHECK(has({0, 0.5}));
  for (const auto& s : rep.states) {
    CHECK(oracle::max_abs(oracle::reaction(md, s.u)) <= 1e-10 * (1 + oracle::max_abs(s.u)));
    CHECK(is_steady_state_member(md, s.u));
  }
  CHECK_FALSE(is_steady_state_member(md, {1.0, 1.0}));
}

TEST_CASE("degenerate steady families are recognised") {
  // proportional rows for v and w: every (0, v, w) with c v + e w = a2 is steady
  const ClosedFormSolution s = instantiate("CD13_3COMP");
  const double c = s.params.at("c").value(), e = s.params.at("e").value(), a2 = s.params.at("a2").value();
  for (double v : {0.5, 1.0, 2.5}) CHECK(is_steady_state_member(s.model, {0, v, (a2 - c * v) / e}));
  CHECK_FALSE(is_steady_state_member(s.model, {0, 1.0, 2.5}));
}

TEST_CASE("model json round-trip is exact") {
  const DlvModel md = DlvModel::three_component(1, Number(13, 6), Number(5, 2), {11, Number(-1, 2), -6, 0},
                                                {9, 1, Number(-1, 6), -2}, {4, 5, -7, 0.25}, "cpp");
  const DlvModel back = model_from_json(model_to_json(md));
  CHECK(back.m() == 3);
  CHECK(back.name() == "cpp");
  for (int i = 0; i < 3; ++i) {
    CHECK(back.lambda_exact()[i] == md.lambda_exact()[i]);
    CHECK(back.a_exact()[i] == md.a_exact()[i]);
    for (int j = 0; j < 3; ++j) CHECK(back.b_exact()[i][j] == md.b_exact()[i][j]);
  }
  CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"lambda":[1,1]})")), DlvError);
}

TEST_CASE("number json accepts strings and pairs") {
  CHECK(number_from_json(nlohmann::json::parse(R"("3/4")")) == Number(3, 4));
  CHECK(number_from_json(nlohmann::json::parse("[3, 4]")) == Number(3, 4));
  CHECK(number_from_json(nlohmann::json::parse("0.5")).value() == 0.5);
  CHECK_THROWS_AS(number_from_json(nlohmann::json::parse("[1, 0]")), DlvError);
  CHECK_THROWS_AS(number_from_json(nlohmann::json::parse(R"("x")")), DlvError);
}
