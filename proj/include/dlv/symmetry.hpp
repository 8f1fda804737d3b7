#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlv/model.hpp"
#include "dlv/solutions.hpp"

namespace dlv {

enum class OperatorKind { Lie, QConditional, QConditionalFirstType };
std::string kind_name(OperatorKind k);

// Q = xi0 d_t + xi1 d_x + sum_i eta_i d_{u_i}
struct OperatorCoeffs {
  double xi0 = 0.0;
  double xi1 = 0.0;
  Vec eta;
};

struct SymmetryOperator {
  using CoeffFn = std::function<OperatorCoeffs(double t, double x, const Vec& u)>;
  using DomainFn = std::function<bool(double t, double x, const Vec& u)>;
  using FlowFn = std::function<ClosedFormSolution(double eps, const ClosedFormSolution& sol)>;

  std::string id;
  OperatorKind kind = OperatorKind::Lie;
  int m = 2;
  std::string family;         // which classification list it comes from
  std::string applicability;  // restriction column, human readable
  std::string formula;        // coefficients, human readable
  CoeffFn coeffs;
  DomainFn domain;                                     // empty: defined everywhere
  std::function<bool(const DlvModel&)> applies;        // restriction predicate
  FlowFn flow;                                         // empty: no finite transformation implemented
  ParamMap params;                                     // operator constants (alpha, beta, ...)

  OperatorCoeffs eval(double t, double x, const Vec& u) const;
  bool in_domain(double t, double x, const Vec& u) const { return !domain || domain(t, x, u); }
};

// Free constants that the tables leave arbitrary.
struct OperatorParams {
  double alpha = 1.0;   // Q^4_i and the three-component Q-conditional operators
  double beta = 1.0;    // Case 3 extra three-component operator
  double alpha0 = 1.0;  // g-functions
  double alpha1 = 1.0;
  double alpha2 = 0.0;
};

// P_t, P_x always, then every implemented operator whose restrictions the model meets.
std::vector<SymmetryOperator> operator_catalog(const DlvModel& model, const OperatorParams& params = {});

// Operators from the classification that carry no coefficient evaluator here.
std::vector<std::string> documentation_only_operators();

// Q(u^i) = xi0 u^i_t + xi1 u^i_x - eta^i along the solution's analytic jet.
Vec invariant_surface_residual(const SymmetryOperator& op, const ClosedFormSolution& sol, double t, double x);

// Finite group transformation with parameter eps; UnsupportedError if op has no flow.
ClosedFormSolution lie_transform(const SymmetryOperator& op, double eps, const ClosedFormSolution& sol);

SymmetryOperator translation_t(int m);
SymmetryOperator translation_x(int m);
SymmetryOperator dilation(int m);
// d_t + alpha d_x, annihilating every traveling wave with speed alpha.
SymmetryOperator front_operator(int m, double alpha);

// Equal-coupling two-component system: (lambda1-lambda2) d_t - (a1 v + a2 u + a1 a2)(d_u - d_v).
SymmetryOperator equal_coupling_affine(const DlvModel& model);

struct GFunction {
  enum class Branch { Trig, Exp, Poly };
  Branch branch = Branch::Trig;
  double alpha0 = 0, alpha1 = 0, alpha2 = 0;
  double kappa = 0;  // sqrt|K|
  double K = 0;      // (lambda1 a2 - lambda2 a1)/(lambda1 - lambda2)
  double lambda = 1;

  double g(double t, double x) const;
  double g_t(double t, double x) const;
  double g_x(double t, double x) const;
  double g_xx(double t, double x) const;
};
std::string branch_name(GFunction::Branch b);

// g^1, g^2 of the first-type operators of the weighted-coupling system.
std::pair<GFunction, GFunction> g_function(const DlvModel& model, double alpha0, double alpha1, double alpha2);

// Q^u_1 (component 0) or Q^v_1 (component 1) for the weighted-coupling system.
SymmetryOperator first_type_g_operator(const DlvModel& model, int component, double alpha0, double alpha1,
                                       double alpha2);

// Three-component operators Q^4_i (i = 1..6) with constant alpha; alpha = 0 gives Q^2_i.
SymmetryOperator q4_operator(const DlvModel& model, int i, double alpha);

// Column scales s with b_ij = w_i s_j, or empty when the model has no such structure.
std::optional<std::vector<Number>> column_scales(const DlvModel& model, const std::vector<Number>& w);

struct RegisteredPair {
  std::string op_id;
  std::string label;
  SymmetryOperator op;
  ClosedFormSolution sol;
};

// (operator, solution) pairs where the solution was built from the operator's invariant surface.
std::vector<RegisteredPair> registered_pairs();
// Operators registered for this instance's entry (empty if none).
std::vector<RegisteredPair> pairs_for(const ClosedFormSolution& sol, const std::string& label);

}  // namespace dlv
