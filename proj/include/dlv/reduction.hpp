#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dlv/model.hpp"
#include "dlv/solutions.hpp"

namespace dlv {

// TW: u = phi(x - alpha t).  A64: equal-coupling affine ansatz with e^{beta t}.
// A619/A620/A621: u = phi(t) G(t,x), v = psi(t) - phi(t) G(t,x) for the trig/exp/poly g-branch.
// A73: three-species ansatz with e^{delta t}.
enum class AnsatzId { TW, A64, A619, A620, A621, A73 };
std::string ansatz_name(AnsatzId id);
AnsatzId ansatz_from_name(const std::string& name);

struct ProfilePoint {
  Vec phi, dphi, ddphi;
};

// Functions of one variable omega (x, t or x - alpha t depending on the ansatz).
struct Profile {
  int dim = 0;
  double lo = -5.0, hi = 5.0;  // interval where eval is meaningful
  std::function<ProfilePoint(double)> fn;
  bool interpolated = false;  // built by integrate_reduced
  bool partial = false;       // numerical integration stopped before the requested end
  std::string diagnostic;     // why it stopped

  ProfilePoint eval(double omega) const;
};

Profile constant_profile(const Vec& phi, double lo = -5.0, double hi = 5.0);
// Shifted copy: q(omega) = p(omega - s).
Profile shift_profile(const Profile& p, double s);
// Adds c to every component (used to probe consistency checks).
Profile offset_profile(const Profile& p, double c);

struct ReducedSystem {
  // order 2: residual uses (phi, phi', phi''), rhs returns phi''.
  // order 1: residual uses (phi, phi'), rhs returns phi'.
  using ResidualFn = std::function<Vec(double w, const Vec& phi, const Vec& dphi, const Vec& ddphi)>;
  using RhsFn = std::function<Vec(double w, const Vec& phi, const Vec& dphi)>;

  std::string id;
  int order = 2;
  int dim = 0;
  ResidualFn residual;
  RhsFn rhs;
  ParamMap params;
};

// phi_i'' + alpha lambda_i phi_i' + phi_i (a_i + sum_j b_ij phi_j) = 0
ReducedSystem tw_reduce(const DlvModel& model, double alpha);

// phi1'' + phi1^2 + (a1+a2) phi1 + a1 a2 = 0,  phi2'' + K phi2 + phi1 phi2 = 0,
// K = (a2 lambda1 - a1 lambda2)/(lambda1 - lambda2).  The variant drops a1 phi1 + a1 a2.
ReducedSystem reduced_equal_coupling(double a1, double a2, double lambda1, double lambda2, bool variant = false);
// phi'' - beta lambda1 phi = 0
ReducedSystem reduced_linear(double beta, double lambda1);
// phi2'' + phi2 (a1-a2)((lambda1 - 3 lambda2)/(2(lambda1 - lambda2)) - 3/2 tanh^2(sqrt(a1-a2) x / 2)) = 0
ReducedSystem reduced_sech_potential(double a1, double a2, double lambda1, double lambda2);
// lambda1 phi' = phi (a1 + psi),
// lambda2 psi' = (a2 + lambda2/lambda1 psi) psi + alpha0 (a1 lambda2/lambda1 - a2) phi
ReducedSystem reduced_g_trig_exp(double a1, double a2, double lambda1, double lambda2, double alpha0);
// lambda1 phi' = phi (a1 + psi),  lambda2 psi' = lambda2/lambda1 (a1 + psi) psi - 2 alpha2 (lambda1 - lambda2) phi
ReducedSystem reduced_g_poly(double a1, double lambda1, double lambda2, double alpha2);
// phi1'' + phi1 (K - phi2 - phi3) = 0, phi2'' + phi2 (a2 - phi2 - phi3) = 0, phi3'' + phi3 (a3 - phi2 - phi3) = 0
ReducedSystem reduced_three_species(double a1, double a2, double a3, double lambda1, double lambda2);

Vec reduced_residual(const ReducedSystem& rs, const Profile& p, double omega);

struct Ansatz {
  AnsatzId id = AnsatzId::TW;
  DlvModel model;
  ReducedSystem reduced;
  ParamMap params;  // constants used by the lift (alpha, beta, delta, kappa, ...)
  // Lifted PDE field with analytic jet; the profile variable is x (A64, A73), t (A619-A621) or x - alpha t (TW).
  std::function<ClosedFormSolution(const Profile&)> lift;
};

// params: TW {alpha}; A64 {}; A619/A620/A621 {alpha0, alpha1, alpha2}; A73 {alpha}.
// Throws RestrictionError when the model does not fit the ansatz.
Ansatz build_ansatz(AnsatzId id, const DlvModel& model, const ParamMap& params = {});

struct IntegrateOptions {
  double tol = 1e-10;        // absolute and relative local tolerance
  double fixed_step = 0.0;   // > 0: classical RK4 with this step instead of adaptive DOPRI5
  double max_abs = 1e12;     // larger |state| is treated as blow-up
};

// Initial state: (phi, phi') for order 2, phi for order 1.  Returns a partial profile with a
// diagnostic if the integration has to stop early.
Profile integrate_reduced(const ReducedSystem& rs, const Vec& init, double w0, double w1,
                          const IntegrateOptions& opt = {});

struct ConsistencyReport {
  double pde_residual = 0.0;      // max scaled PDE residual of the lifted field over the grid
  double reduced_residual = 0.0;  // max |reduced residual| over omega samples
  double interpolation_error = 0.0;  // interpolants only: max |central difference of phi - phi'|
  int points = 0;
  bool consistent = false;  // pde <= C (reduced + interpolation) + 1e-12
};

ConsistencyReport consistency_check(const Ansatz& ans, const Profile& p, const Window& grid, int n = 21);

// Closed-form reduced solutions.
Profile tanh_profile(const TanhForm& f);  // omega = x - alpha t
// phi1 = -a1, phi2 = C1 cos(s x) + C2 sin(s x) (beta < 0) or C1 e^{s x} + C2 e^{-s x} (beta > 0), s = sqrt|beta lambda1|
Profile equal_coupling_linear_profile(double a1, double a2, double lambda1, double lambda2, double C1, double C2);
// phi1 = 3(a1-a2)/2 sech^2(k x) - a1 and phi2 = f (C1 + C2 int 1/f^2), f = cosh^3 (or sinh cosh^3 when cubic_sinh)
Profile equal_coupling_sech_profile(double a1, double a2, double C1, double C2, bool cubic_sinh);
// (phi, psi)(t) of the g-branch closed form on the unscaled system.  For a model with coupling rows -(b, c) and
// -(lambda2/lambda1)(b, c) pass its b; b = -1 is the unscaled system itself.
Profile g_branch_profile(double a1, double a2, double lambda1, double lambda2, double alpha0, double C1, double C2,
                         double b = -1.0);
// phi1 = C1 cos(s x) + C2 sin(s x), s = sqrt(-delta lambda2), phi2 = v0, phi3 = a2 - v0
Profile three_species_profile(double delta, double lambda2, double a2, double v0, double C1, double C2);

// An ansatz with the exact reduced solution that lifts back to a catalog instance.
struct ReductionTriple {
  std::string label;
  ClosedFormSolution sol;
  Ansatz ansatz;
  Profile profile;
};

// UnsupportedError for entries without a known reduction (the heat-kernel entries).
ReductionTriple reduction_triple(const ClosedFormSolution& sol);
// Every reducible catalog entry at its defaults, plus the rescaled CD21_CASE1 instance.
std::vector<ReductionTriple> reduction_triples();

// max |a - b| / (1 + |b|) over an n x n grid of b's window (points valid for both); -1 if no point qualifies.
double lift_difference(const ClosedFormSolution& a, const ClosedFormSolution& b, int n = 21);

// CSV omega,phi1,dphi1,ddphi1[,...]
void write_profile_csv(std::ostream& os, const Profile& p, const std::vector<double>& omegas);

}  // namespace dlv
