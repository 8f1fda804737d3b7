#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dlv/errors.hpp"
#include "dlv/solutions.hpp"
#include "solutions_internal.hpp"

namespace dlv {

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"RM2000_A", 2, {"a", "lambda"}, {}, {"a > 0", "lambda > 0"},
       "competition front, u linear and v quadratic in tanh", true},
      {"RM2000_B", 2, {"a", "c"}, {}, {"a > 0", "1 + a c > 0", "a c != 5", "lambda2 = (1 + a(c-6))/(5 - a c) > 0"},
       "competition front, u and v quadratic in tanh", true},
      {"FISHER_FRONT", 2, {"a1", "a2", "b1", "b2", "c1", "c2"}, {"branch"},
       {"branch 0: a1 = a2, c1 != c2", "branch 1: c2 != 0, beta1 (a1 c2 - a2 c1 + a2 c2) + a2 b2 = 0 when c1 != c2",
        "c1 = c2 requires b1 = b2", "a > 0", "b != 0"},
       "front with v = beta0 + beta1 u and a Fisher profile for u", true},
      {"FISHER_COTH", 2, {"a1", "a2", "b1", "b2", "c1", "c2"}, {"branch"},
       {"as FISHER_FRONT", "excludes the line sqrt(a/24) x - 5a/12 t = 0"},
       "coth counterpart of the Fisher-profile front, singular on a moving line", true},
      {"PREDPREY_FRONT", 2, {"a1", "a2", "b1", "b2", "c"}, {},
       {"a1 b2 - a2 b1 > 0", "3 b1 + b2 > 0", "c != 0", "lambda > 0"}, "prey-predator front", true},
      {"HUNG11_TW", 3, {"a", "alpha"}, {}, {"a != 0", "8 - a + 4 alpha != 0", "2 + alpha - a != 0"},
       "three-species front with equal diffusivities", true},
      {"CH12_TW", 3, {"a", "e"}, {}, {"a != 0", "e != 1"},
       "three-species front with equal diffusivities, coefficients fixed by a and e", true},
      {"CPP_FRONT", 3, {"a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"}, {},
       {"(24+a3)(b1 c2 - b2 c1) = (8-a1)(b2 c3 - b3 c2) + (8-a2)(b3 c1 - b1 c3)", "a3 < 16", "a1 > -4",
        "a2 > -4", "b3 c2 != b2 c3"},
       "competition-prey-predator front", true},
      {"CD11_EXP", 2, {"a1", "a2", "lambda1", "lambda2", "C1", "C2"}, {},
       {"a1 != a2", "lambda1 != lambda2", "beta = (a1-a2)/(lambda1-lambda2) > 0"},
       "conditional-symmetry solution, exponential branch", false},
      {"CD11_TRIG", 2, {"a1", "a2", "lambda1", "lambda2", "C1", "C2"}, {},
       {"a1 != a2", "lambda1 != lambda2", "beta = (a1-a2)/(lambda1-lambda2) < 0"},
       "conditional-symmetry solution, trigonometric branch", false},
      {"CD11_TANH2", 2, {"a1", "a2", "lambda2", "C1", "C2"}, {}, {"a1 > a2", "lambda1 = 9/5 lambda2"},
       "sech^2 profile with f = cosh^3", false},
      {"CD11_TANH3", 2, {"a1", "a2", "lambda2", "C1", "C2"}, {}, {"a1 > a2", "lambda1 = 4/3 lambda2", "x > 0"},
       "sech^2 profile with f = sinh cosh^3", false},
      {"CD11_COMP", 2, {"a1", "a2", "b", "c", "lambda1", "lambda2", "C2"}, {},
       {"a1 > 0", "a2 > 0", "b > 0", "c > 0", "lambda1 != lambda2", "beta = (a1-a2)/(lambda1-lambda2) < 0"},
       "competition system, rescaled trigonometric branch", false},
      {"CD21_CASE1", 2, {"a1", "a2", "lambda1", "lambda2", "alpha0", "alpha1", "alpha2", "C1", "C2"}, {"b", "c"},
       {"lambda1 != lambda2", "a1 a2 != 0", "kappa^2 = (lambda1 a2 - lambda2 a1)/(lambda1 - lambda2) > 0",
        "b c != 0 when given"},
       "first-type conditional-symmetry solution (rescaled when b, c are given)", false},
      {"CD13_3COMP", 3, {"a1", "a2", "lambda1", "lambda2", "b", "c", "e", "alpha", "v0"}, {"C1", "C2"},
       {"a1 != a2 = a3", "lambda3 = lambda2", "lambda1 != lambda2", "delta = (a1-a2)/(lambda1-lambda2) < 0",
        "b c e != 0"},
       "three-species competition, conditional-symmetry solution", false},
      {"HK_FAMILY", 3, {"w0", "c1", "b2", "e1", "e2"}, {"c2", "e3", "profile", "beta", "gamma", "center", "width", "nodes"},
       {"c1 b2 != 1", "linear terms independent of the coupling rows"},
       "heat-kernel family for equal diffusivities", false},
      {"HK_SIN", 3, {"w0", "beta", "gamma", "c1", "b2", "e1", "e2"}, {"c2", "e3"}, {"c1 b2 != 1"},
       "heat-kernel family with a sine profile", false},
  };
  return entries;
}

bool is_catalog_id(const std::string& id) {
  const auto& c = catalog();
  return std::any_of(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.id == id; });
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return e;
  }
  throw DlvError("unknown solution id '" + id + "'");
}

ParamMap default_params(const std::string& id) {
  using N = Number;
  if (id == "RM2000_A") return {{"a", 2}, {"lambda", N(1, 2)}};
  if (id == "RM2000_B") return {{"a", N(1, 10)}, {"c", 1}};
  if (id == "FISHER_FRONT" || id == "FISHER_COTH") {
    return {{"a1", 1}, {"a2", 1}, {"b1", 2}, {"b2", 1}, {"c1", N(1, 2)}, {"c2", 1}, {"branch", 0}};
  }
  if (id == "PREDPREY_FRONT") return {{"a1", 1}, {"a2", N(3, 10)}, {"b1", N(1, 2)}, {"b2", 2}, {"c", N(7, 10)}};
  if (id == "HUNG11_TW") return {{"a", 5}, {"alpha", N(1, 2)}};
  if (id == "CH12_TW") return {{"a", 25}, {"e", 2}};
  if (id == "CPP_FRONT") {
    return {{"a1", 11}, {"a2", 9}, {"a3", 4}, {"b1", N(1, 2)}, {"b2", N(1, 6)},
            {"b3", 5},  {"c1", 6}, {"c2", 2}, {"c3", 7}};
  }
  if (id == "CD11_EXP") {
    return {{"a1", 4}, {"a2", 3}, {"lambda1", 2}, {"lambda2", 1}, {"C1", N(3, 10)}, {"C2", N(1, 5)}};
  }
  if (id == "CD11_TRIG") {
    return {{"a1", 3}, {"a2", 4}, {"lambda1", 2}, {"lambda2", 1}, {"C1", N(3, 10)}, {"C2", N(1, 5)}};
  }
  if (id == "CD11_TANH2" || id == "CD11_TANH3") {
    return {{"a1", 3}, {"a2", 1}, {"lambda2", 1}, {"C1", N(3, 10)}, {"C2", N(1, 5)}};
  }
  if (id == "CD11_COMP") {
    return {{"a1", 3}, {"a2", 4}, {"b", N(1, 2)}, {"c", N(1, 5)}, {"lambda1", 2}, {"lambda2", 1}, {"C2", N(1, 3)}};
  }
  if (id == "CD21_CASE1") {
    return {{"a1", 3},     {"a2", 2},     {"lambda1", N(3, 4)}, {"lambda2", 1}, {"alpha0", 2},
            {"alpha1", 1}, {"alpha2", 0}, {"C1", -2},           {"C2", 5}};
  }
  if (id == "CD13_3COMP") {
    return {{"a1", N(9, 2)}, {"a2", 2},  {"lambda1", 1}, {"lambda2", 2}, {"b", N(1, 2)}, {"c", N(3, 4)},
            {"e", N(1, 7)},  {"alpha", -1}, {"v0", N(3, 2)}, {"C1", 0},   {"C2", 1}};
  }
  if (id == "HK_SIN") {
    return {{"w0", N(1, 2)},  {"beta", N(1, 4)}, {"gamma", 1}, {"c1", N(1, 2)}, {"b2", N(1, 3)},
            {"e1", N(1, 4)},  {"e2", N(1, 5)},   {"c2", 1},    {"e3", 1}};
  }
  if (id == "HK_FAMILY") {
    return {{"w0", N(1, 2)}, {"c1", N(1, 2)}, {"b2", N(1, 3)}, {"e1", N(1, 4)},  {"e2", N(1, 5)},
            {"c2", 1},       {"e3", 1},       {"profile", 0},  {"beta", N(1, 4)}, {"gamma", 1},
            {"center", 0},   {"width", 1},    {"nodes", 64}};
  }
  throw DlvError("unknown solution id '" + id + "'");
}

ClosedFormSolution instantiate(const std::string& id, const ParamMap& raw) {
  const CatalogEntry& entry = catalog_entry(id);
  ParamMap p = default_params(id);
  auto br = raw.find("branch");
  if ((id == "FISHER_FRONT" || id == "FISHER_COTH") && br != raw.end() && br->second == Number(1)) {
    p = {{"a1", 2}, {"a2", 1}, {"b1", 1}, {"b2", 1}, {"c1", 1}, {"c2", 1}, {"branch", 1}};
  }
  for (const auto& [k, v] : raw) {
    bool known = std::find(entry.free_params.begin(), entry.free_params.end(), k) != entry.free_params.end() ||
                 std::find(entry.optional_params.begin(), entry.optional_params.end(), k) !=
                     entry.optional_params.end();
    if (!known) throw DlvError(id + ": unknown parameter '" + k + "'");
    p[k] = v;
  }
  ClosedFormSolution s;
  try {
  if (id == "RM2000_A") s = detail::make_rm2000_a(p);
  else if (id == "RM2000_B") s = detail::make_rm2000_b(p);
  else if (id == "FISHER_FRONT") s = detail::make_fisher(p, false);
  else if (id == "FISHER_COTH") s = detail::make_fisher(p, true);
  else if (id == "PREDPREY_FRONT") s = detail::make_predprey(p);
  else if (id == "HUNG11_TW") s = detail::make_hung11(p);
  else if (id == "CH12_TW") s = detail::make_ch12(p);
  else if (id == "CPP_FRONT") s = detail::make_cpp(p);
  else if (id == "CD11_EXP") s = detail::make_cd11_linear(p, false);
  else if (id == "CD11_TRIG") s = detail::make_cd11_linear(p, true);
  else if (id == "CD11_TANH2") s = detail::make_cd11_tanh(p, false);
  else if (id == "CD11_TANH3") s = detail::make_cd11_tanh(p, true);
  else if (id == "CD11_COMP") s = detail::make_cd11_comp(p);
  else if (id == "CD21_CASE1") s = detail::make_cd21(p);
  else if (id == "CD13_3COMP") s = detail::make_cd13(p);
  else if (id == "HK_FAMILY") s = detail::make_hk_family(p);
  else s = detail::make_hk_sin(p);
  } catch (const std::domain_error& e) {
    throw RestrictionError(id, e.what());
  }
  s.id = id;
  s.params = p;
  return s;
}

JetPoint jet(const ClosedFormSolution& sol, double t, double x) {
  if (!sol.valid(t, x)) {
    throw DomainError(sol.id + ": (t, x) = (" + format_double(t) + ", " + format_double(x) +
                      ") is outside the validity domain");
  }
  JetPoint j = sol.jet_fn(t, x);
  j.t = t;
  j.x = x;
  return j;
}

Vec eval(const ClosedFormSolution& sol, double t, double x) { return jet(sol, t, x).u; }

std::optional<Vec> time_asymptote(const ClosedFormSolution& sol) { return sol.asymptote; }

JetPoint tanh_form_jet(const TanhForm& f, double t, double x) {
  const int m = static_cast<int>(f.A.size());
  const double z = f.mu * (x - f.alpha * t);
  double T, s;  // s = dT/dz = 1 - T^2, computed without cancellation
  if (f.coth) {
    double sh = std::sinh(z);
    T = std::cosh(z) / sh;
    s = -1.0 / (sh * sh);
  } else {
    double ch = std::cosh(z);
    T = std::tanh(z);
    s = 1.0 / (ch * ch);
  }
  JetPoint j = JetPoint::zeros(m, t, x);
  for (int i = 0; i < m; ++i) {
    const auto& c = f.A[i];
    double P = 0.0, dP = 0.0, ddP = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
      ddP = ddP * T + 2.0 * dP;
      dP = dP * T + P;
      P = P * T + c[k];
    }
    // d/dz P(T) = s P',  d2/dz2 = s (-2 T P' + s P'')
    double pz = s * dP;
    double pzz = s * (-2.0 * T * dP + s * ddP);
    j.u[i] = P;
    j.u_x[i] = f.mu * pz;
    j.u_xx[i] = f.mu * f.mu * pzz;
    j.u_t[i] = -f.alpha * f.mu * pz;
  }
  return j;
}

ClosedFormSolution wrap_solution(std::string id, DlvModel model, ClosedFormSolution::JetFn jetf,
                                 ClosedFormSolution::ValidFn valid, Window window, bool autonomous) {
  ClosedFormSolution s;
  s.id = std::move(id);
  s.model = std::move(model);
  s.jet_fn = std::move(jetf);
  s.valid_fn = std::move(valid);
  s.window = window;
  s.autonomous = autonomous;
  return s;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = 0.5 * (a + b);
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  v[n - 1] = b;
  return v;
}

namespace detail {

std::optional<Vec> tanh_limit(const TanhForm& f) {
  double sgn = f.mu * f.alpha;
  if (sgn == 0.0) return std::nullopt;
  double T = sgn > 0 ? -1.0 : 1.0;
  Vec u;
  for (const auto& c : f.A) {
    double P = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) P = P * T + c[k];
    u.push_back(P);
  }
  return u;
}

ClosedFormSolution make_tanh_solution(std::string id, DlvModel model, TanhForm form, Window window) {
  ClosedFormSolution s;
  s.id = std::move(id);
  s.model = std::move(model);
  s.window = window;
  s.autonomous = true;
  s.tanh_form = form;
  s.jet_fn = [form](double t, double x) { return tanh_form_jet(form, t, x); };
  if (form.coth) {
    s.valid_fn = [form](double t, double x) { return std::fabs(form.mu * (x - form.alpha * t)) > kGuardBand; };
  } else {
    s.asymptote = tanh_limit(form);
  }
  return s;
}

}  // namespace detail

}  // namespace dlv
