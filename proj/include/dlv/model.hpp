#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dlv/number.hpp"

namespace dlv {

using Vec = std::vector<double>;

// lambda_i u^i_t = u^i_xx + u^i (a_i + sum_j b_ij u^j),  i = 1..m.
class DlvModel {
 public:
  static DlvModel build(std::vector<Number> lambda, std::vector<Number> a, std::vector<std::vector<Number>> b,
                        std::string name = "");

  // lambda1 u_t = u_xx + u(a1 + b1 u + c1 v),  lambda2 v_t = v_xx + v(a2 + b2 u + c2 v).
  static DlvModel two_component(Number l1, Number l2, Number a1, Number a2, Number b1, Number c1, Number b2,
                                Number c2, std::string name = "");

  struct Row3 {
    Number a, b, c, e;  // a_i + b_i u + c_i v + e_i w
  };
  static DlvModel three_component(Number l1, Number l2, Number l3, Row3 r1, Row3 r2, Row3 r3,
                                  std::string name = "");

  int m() const { return m_; }
  const std::string& name() const { return name_; }

  const std::vector<Number>& lambda_exact() const { return lambda_; }
  const std::vector<Number>& a_exact() const { return a_; }
  const std::vector<std::vector<Number>>& b_exact() const { return b_; }

  double lambda(int i) const { return lam_d_[i]; }
  double a(int i) const { return a_d_[i]; }
  double b(int i, int j) const { return b_d_[static_cast<std::size_t>(i * m_ + j)]; }
  double min_lambda() const;

  // u = s .* U; returns the model satisfied by U (b'_ij = b_ij s_j).
  DlvModel rescale_components(const std::vector<Number>& s) const;
  DlvModel renamed(std::string name) const;

 private:
  int m_ = 0;
  std::string name_;
  std::vector<Number> lambda_, a_;
  std::vector<std::vector<Number>> b_;
  Vec lam_d_, a_d_, b_d_;
};

struct JetPoint {
  double t = 0.0;
  double x = 0.0;
  Vec u, u_t, u_x, u_xx;

  static JetPoint zeros(int m, double t, double x);
  bool finite() const;
};

Vec reaction(const DlvModel& model, const Vec& u);

// S_i = lambda_i u_t - u_xx - u_i (a_i + sum_j b_ij u_j).
Vec pde_residual(const DlvModel& model, const JetPoint& jet);

// Largest magnitude among lambda u_t, u_xx, a_i u_i and b_ij u_i u_j.
double residual_scale(const DlvModel& model, const JetPoint& jet);

// max_i |S_i| / (1 + scale)
double scaled_residual(const DlvModel& model, const JetPoint& jet);

struct NondegeneracyReport {
  bool applicable = false;
  std::vector<std::pair<std::string, bool>> flags;
  bool pass = false;
};

NondegeneracyReport nondegeneracy(const DlvModel& model);

struct SteadyState {
  Vec u;
  std::vector<int> active_set;
};

struct DegenerateSubset {
  std::vector<int> active_set;
  bool consistent = false;  // the singular subsystem still has solutions
};

struct SteadyStateReport {
  std::vector<SteadyState> states;
  std::vector<DegenerateSubset> degenerate;
};

SteadyStateReport steady_states(const DlvModel& model);

// True if u is a listed steady state, or lies in a consistent degenerate
// subset and zeroes the reaction there.
bool is_steady_state_member(const DlvModel& model, const Vec& u, double tol = 1e-10);

}  // namespace dlv
