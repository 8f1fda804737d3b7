#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dlv/model.hpp"
#include "dlv/solutions.hpp"

namespace dlv {

// Sparse polynomial in n unknowns with double coefficients.
class MPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MPoly(int nvars = 0) : n_(nvars) {}
  static MPoly constant(int nvars, double c);
  static MPoly variable(int nvars, int index);

  int nvars() const { return n_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(double s);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(double s, MPoly a) { return a *= s; }

  double eval(const Vec& x) const;
  // Sum of |monomial values|, the natural scale for a residual of this polynomial.
  double term_scale(const Vec& x) const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  void add_term(const Exponents& e, double c);
  int n_;
  std::map<Exponents, double> terms_;
};

// A scalar of the tanh ansatz: a fixed number or a named unknown (value = seed).
struct Scalar {
  double value = 0.0;
  bool unknown = false;
  std::string name;

  static Scalar fixed(double v) { return {v, false, ""}; }
  static Scalar var(std::string name, double seed) { return {seed, true, std::move(name)}; }
};

// u_i = sum_k A[i][k] T^k, T = tanh(mu (x - alpha t)) (or coth).  Model coefficients are scalars too,
// so restrictions on lambda, a or b can be solved for.
struct TanhAnsatz {
  std::vector<int> degrees;
  std::vector<std::vector<Scalar>> A;
  Scalar mu = Scalar::fixed(1.0), alpha = Scalar::fixed(0.0);
  std::vector<Scalar> lambda, a;
  std::vector<std::vector<Scalar>> b;
  bool coth = false;

  std::vector<std::string> unknown_names() const;
  Vec seed() const;
};

// Balancing phi'' (degree N+2) against the quadratic terms (degree 2N) gives N = 2.  A request of
// per-component degrees in {1, 2} is validated and returned instead.
std::vector<int> balance_degrees(const DlvModel& model, const std::vector<int>& request = {});

// All coefficients zero, model coefficients fixed at the model's values.
TanhAnsatz make_tanh_ansatz(const DlvModel& model, const std::vector<int>& degrees);
// Everything fixed at the values of a catalog tanh form.
TanhAnsatz tanh_ansatz_from_form(const DlvModel& model, const TanhForm& f);

struct EquationTag {
  int component = 0;
  int power = 0;  // coefficient of T^power
};

struct AlgebraicSystem {
  std::vector<std::string> unknowns;
  std::vector<MPoly> equations;
  std::vector<EquationTag> tags;

  Vec eval(const Vec& x) const;
  // max_k |F_k| / (1 + term scale of F_k)
  double scaled_residual(const Vec& x) const;
  double max_residual(const Vec& x) const;
  // One line per equation: "u<i> T^<k>: <polynomial>".
  std::string dump() const;
};

// One equation per (component, power of T) of phi'' + alpha lambda_i phi' + phi_i (a_i + sum_j b_ij phi_j),
// with dT/domega = mu (1 - T^2).  Every power up to the residual's degree gets an equation, even when it
// vanishes identically.
AlgebraicSystem build_system(const TanhAnsatz& ans);

// The same residual evaluated directly at a value of T, all scalars fixed at their values.
Vec direct_tw_residual(const TanhAnsatz& ans, double T);

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 100;
  double singular_ratio = 1e-10;  // sigma_min / sigma_max below this is a singular Jacobian
};

struct NewtonResult {
  enum class Status { Converged, Singular, MaxIterations, Divergence, Stalled };
  Status status = Status::MaxIterations;
  Vec x;  // best iterate
  double residual = 0.0;  // ||F||_inf at x
  int iterations = 0;
  bool ok() const { return status == Status::Converged; }
};
std::string status_name(NewtonResult::Status s);

// Damped Gauss-Newton with forward-difference Jacobian (step 1e-7 (1 + |x|)) and SVD solves; works for
// square and overdetermined systems.  Failures are reported in the result, not thrown.
NewtonResult newton_solve(const AlgebraicSystem& sys, const Vec& seed, const NewtonOptions& opt = {});

struct MultistartResult {
  std::vector<NewtonResult> starts;  // in start order
  std::vector<Vec> solutions;        // distinct converged points, in order of first discovery
};
inline constexpr std::uint64_t kMultistartSeed = 0xD1F;
MultistartResult multistart_solve(const AlgebraicSystem& sys, int draws = 64, double range = 3.0,
                                  std::uint64_t seed = kMultistartSeed, const NewtonOptions& opt = {});

struct InstanceReport {
  std::string id;
  int equations = 0;
  double max_residual = 0.0;     // max |F_k|
  double scaled_residual = 0.0;  // max |F_k| / (1 + term scale)
  std::vector<int> degrees;
};

// Substitutes a tanh-type catalog entry into its own algebraic system.  UnsupportedError otherwise.
InstanceReport verify_catalog_instance(const std::string& id, const ParamMap& params = {});
InstanceReport verify_tanh_solution(const ClosedFormSolution& sol);

struct RecoveryResult {
  std::vector<std::string> unknowns;
  Vec truth, seed;
  NewtonResult newton;
  double max_error = 0.0;  // max |x - truth| over the unknowns
};

// Frees every amplitude, mu, alpha and lambda_2..m of a tanh-type instance, seeds Newton with the true
// values times (1 + rel) and reports how well they are recovered.
RecoveryResult recover_from_perturbed_seed(const ClosedFormSolution& sol, double rel = 0.1,
                                           const NewtonOptions& opt = {});

}  // namespace dlv
