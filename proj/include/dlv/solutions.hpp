#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dlv/model.hpp"
#include "dlv/number.hpp"

namespace dlv {

// Rectangle of (t, x) used for sampling a solution inside its validity domain.
struct Window {
  double t0 = 0.0, t1 = 1.0;
  double x0 = -1.0, x1 = 1.0;
};

// u_i = sum_k A[i][k] T^k with T = tanh(mu (x - alpha t)), or coth when coth is set.
struct TanhForm {
  std::vector<std::vector<double>> A;
  double mu = 1.0;
  double alpha = 0.0;
  bool coth = false;
};

// Points closer than this to a singular set (in the composite argument) are rejected.
inline constexpr double kGuardBand = 1e-6;

class ClosedFormSolution {
 public:
  using JetFn = std::function<JetPoint(double t, double x)>;
  using ValidFn = std::function<bool(double t, double x)>;

  std::string id;
  DlvModel model;
  ParamMap params;   // free parameters after defaults are filled in
  ParamMap derived;  // derived constants (lambda, alpha, kappa, beta, ...)
  JetFn jet_fn;
  ValidFn valid_fn;
  std::optional<Vec> asymptote;
  Window window;
  bool autonomous = true;
  std::optional<TanhForm> tanh_form;

  int m() const { return model.m(); }
  bool valid(double t, double x) const { return std::isfinite(t) && std::isfinite(x) && (!valid_fn || valid_fn(t, x)); }
};

using SolutionPtr = std::shared_ptr<const ClosedFormSolution>;

struct CatalogEntry {
  std::string id;
  int m = 2;
  std::vector<std::string> free_params;
  std::vector<std::string> optional_params;
  std::vector<std::string> restrictions;
  std::string source;
  bool tanh_type = false;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& id);  // throws DlvError for unknown ids
bool is_catalog_id(const std::string& id);

// Parameter values used when a caller gives none.
ParamMap default_params(const std::string& id);

// Missing parameters are taken from default_params; unknown keys are rejected.
ClosedFormSolution instantiate(const std::string& id, const ParamMap& raw = {});

Vec eval(const ClosedFormSolution& sol, double t, double x);
JetPoint jet(const ClosedFormSolution& sol, double t, double x);
std::optional<Vec> time_asymptote(const ClosedFormSolution& sol);

// Jet of a tanh/coth polynomial form; shared by every front entry.
JetPoint tanh_form_jet(const TanhForm& f, double t, double x);

// Bounded profile for the heat-kernel family.
struct HeatProfile {
  enum class Kind { Sin, Gaussian, Tabulated };
  Kind kind = Kind::Sin;
  double beta = 1.0, gamma = 1.0;     // sin: beta sin(gamma y)
  double center = 0.0, width = 1.0;   // gaussian: beta exp(-((y-center)/width)^2)
  double y0 = 0.0, dy = 1.0;          // tabulated on y0 + k dy, clamped outside
  std::vector<double> table;

  static HeatProfile sine(double beta, double gamma);
  static HeatProfile gaussian(double beta, double center, double width);
  static HeatProfile tabulated(double y0, double dy, std::vector<double> values);
};

struct HeatKernelCoeffs {
  Number c1, b2, e1, e2;
  Number c2 = 1, e3 = 1;
};

ClosedFormSolution heat_kernel_family(const HeatProfile& f, Number w0, const HeatKernelCoeffs& k, int nodes = 64);

// Coefficients (A, B, C) with A L1 + B L2 + C L3 = 0 for the linear terms L_i of the
// heat-kernel system, normalized so C = 1.
std::vector<double> heat_kernel_combination(const DlvModel& model);

// Auxiliary solutions used to exercise Lie flows on systems with no catalog entry.
// u = -lambda1/(b1 t), v = t^{-r}(x^2 + 2t/lambda2), r = b2 lambda1/(b1 lambda2); t > 0.
ClosedFormSolution power_solution(Number lambda1, Number lambda2, Number b1, Number b2);
// lambda u_t = u_xx + b1 u^2 (steady u = -6/(b1 x^2)), v = u; lambda1 = lambda2 = lambda.
ClosedFormSolution case5_solution(Number lambda, Number b1);
// Fisher front for u(a1 + b1 u) with lambda = 1 and v = u (b1 < 0, a1 > 0).
ClosedFormSolution case4_solution(Number a1, Number b1);
// Constant solution at a steady state of the model.
ClosedFormSolution constant_solution(const DlvModel& model, const Vec& u);

// Wraps a jet function with checking helpers (used by flows and lifts).
ClosedFormSolution wrap_solution(std::string id, DlvModel model, ClosedFormSolution::JetFn jet,
                                 ClosedFormSolution::ValidFn valid, Window window, bool autonomous);

// Sample times/positions inside the window (n points each, endpoints included).
std::vector<double> linspace(double a, double b, int n);

}  // namespace dlv
