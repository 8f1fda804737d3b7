#include "dlv/tanh_engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "dlv/errors.hpp"

namespace dlv {

// ---------------------------------------------------------------------------
// MPoly

MPoly MPoly::constant(int nvars, double c) {
  MPoly p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

MPoly MPoly::variable(int nvars, int index) {
  MPoly p(nvars);
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(index)] = 1;
  p.add_term(e, 1.0);
  return p;
}

void MPoly::add_term(const Exponents& e, double c) {
  if (c == 0.0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

int MPoly::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (n_ != o.n_) throw DimensionError("polynomials over different variable sets");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (n_ != o.n_) throw DimensionError("polynomials over different variable sets");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.n_ != b.n_) throw DimensionError("polynomials over different variable sets");
  MPoly r(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      MPoly::Exponents e = ea;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

namespace {

double monomial(const MPoly::Exponents& e, const Vec& x) {
  double v = 1.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    for (int p = 0; p < e[k]; ++p) v *= x[k];
  }
  return v;
}

}  // namespace

double MPoly::eval(const Vec& x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionError("wrong number of unknowns");
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * monomial(e, x);
  return s;
}

double MPoly::term_scale(const Vec& x) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::fabs(c * monomial(e, x));
  return s;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    os << std::fabs(c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      os << '*' << (k < names.size() ? names[k] : "x" + std::to_string(k));
      if (e[k] > 1) os << '^' << e[k];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Ansatz

namespace {

template <class F>
void for_each_scalar(const TanhAnsatz& a, F f) {
  for (const auto& s : a.lambda) f(s);
  for (const auto& s : a.a) f(s);
  for (const auto& row : a.b) {
    for (const auto& s : row) f(s);
  }
  for (const auto& row : a.A) {
    for (const auto& s : row) f(s);
  }
  f(a.mu);
  f(a.alpha);
}

}  // namespace

std::vector<std::string> TanhAnsatz::unknown_names() const {
  std::vector<std::string> names;
  for_each_scalar(*this, [&](const Scalar& s) {
    if (!s.unknown) return;
    if (s.name.empty()) throw DlvError("unknown scalar without a name");
    if (std::find(names.begin(), names.end(), s.name) == names.end()) names.push_back(s.name);
  });
  return names;
}

Vec TanhAnsatz::seed() const {
  std::vector<std::string> names;
  Vec out;
  for_each_scalar(*this, [&](const Scalar& s) {
    if (!s.unknown || std::find(names.begin(), names.end(), s.name) != names.end()) return;
    names.push_back(s.name);
    out.push_back(s.value);
  });
  return out;
}

std::vector<int> balance_degrees(const DlvModel& model, const std::vector<int>& request) {
  const int m = model.m();
  if (request.empty()) return std::vector<int>(static_cast<std::size_t>(m), 2);
  if (static_cast<int>(request.size()) != m) {
    throw DimensionError("degree request has " + std::to_string(request.size()) + " entries for m = " +
                         std::to_string(m));
  }
  for (int d : request) {
    if (d != 1 && d != 2) throw DlvError("tanh degrees must be 1 or 2, got " + std::to_string(d));
  }
  return request;
}

TanhAnsatz make_tanh_ansatz(const DlvModel& model, const std::vector<int>& degrees) {
  const int m = model.m();
  auto deg = balance_degrees(model, degrees);
  TanhAnsatz a;
  a.degrees = deg;
  for (int i = 0; i < m; ++i) {
    a.A.emplace_back(static_cast<std::size_t>(deg[i] + 1), Scalar::fixed(0.0));
    a.lambda.push_back(Scalar::fixed(model.lambda(i)));
    a.a.push_back(Scalar::fixed(model.a(i)));
    std::vector<Scalar> row;
    for (int j = 0; j < m; ++j) row.push_back(Scalar::fixed(model.b(i, j)));
    a.b.push_back(row);
  }
  return a;
}

TanhAnsatz tanh_ansatz_from_form(const DlvModel& model, const TanhForm& f) {
  if (static_cast<int>(f.A.size()) != model.m()) throw DimensionError("tanh form does not match the model");
  std::vector<int> deg;
  for (const auto& row : f.A) deg.push_back(static_cast<int>(row.size()) - 1);
  TanhAnsatz a = make_tanh_ansatz(model, deg);
  for (std::size_t i = 0; i < f.A.size(); ++i) {
    for (std::size_t k = 0; k < f.A[i].size(); ++k) a.A[i][k] = Scalar::fixed(f.A[i][k]);
  }
  a.mu = Scalar::fixed(f.mu);
  a.alpha = Scalar::fixed(f.alpha);
  a.coth = f.coth;
  return a;
}

// ---------------------------------------------------------------------------
// System construction

namespace {

using TPoly = std::vector<MPoly>;  // coefficient of T^k at index k

struct Builder {
  std::vector<std::string> names;
  int n = 0;

  MPoly of(const Scalar& s) const {
    if (!s.unknown) return MPoly::constant(n, s.value);
    auto it = std::find(names.begin(), names.end(), s.name);
    return MPoly::variable(n, static_cast<int>(it - names.begin()));
  }

  TPoly zero(std::size_t len) const { return TPoly(len, MPoly(n)); }

  TPoly add(const TPoly& a, const TPoly& b) const {
    TPoly r = zero(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
    return r;
  }

  TPoly mul(const TPoly& a, const TPoly& b) const {
    if (a.empty() || b.empty()) return {};
    TPoly r = zero(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  }

  TPoly scale(const TPoly& a, const MPoly& s) const {
    TPoly r = a;
    for (auto& c : r) c = c * s;
    return r;
  }

  TPoly deriv(const TPoly& a) const {
    if (a.size() <= 1) return zero(1);
    TPoly r = zero(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) r[k - 1] = static_cast<double>(k) * a[k];
    return r;
  }

  TPoly constant(const MPoly& c) const { return TPoly{c}; }
};

}  // namespace

AlgebraicSystem build_system(const TanhAnsatz& ans) {
  const int m = static_cast<int>(ans.A.size());
  if (m == 0) throw DimensionError("empty tanh ansatz");
  if (static_cast<int>(ans.lambda.size()) != m || static_cast<int>(ans.a.size()) != m ||
      static_cast<int>(ans.b.size()) != m) {
    throw DimensionError("ansatz model coefficients do not match its component count");
  }
  Builder B;
  B.names = ans.unknown_names();
  B.n = static_cast<int>(B.names.size());

  const TPoly s{MPoly::constant(B.n, 1.0), MPoly(B.n), MPoly::constant(B.n, -1.0)};  // 1 - T^2
  const TPoly Tm2{MPoly(B.n), MPoly::constant(B.n, -2.0)};                              // -2 T
  const MPoly mu = B.of(ans.mu), alpha = B.of(ans.alpha);

  std::vector<TPoly> U(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (const auto& c : ans.A[i]) U[i].push_back(B.of(c));
  }

  AlgebraicSystem sys;
  sys.unknowns = B.names;
  for (int i = 0; i < m; ++i) {
    TPoly d1 = B.deriv(U[i]), d2 = B.deriv(d1);
    // phi' = mu s U',  phi'' = mu^2 s (-2 T U' + s U'')
    TPoly phi1 = B.scale(B.mul(s, d1), mu);
    TPoly phi2 = B.scale(B.mul(s, B.add(B.mul(Tm2, d1), B.mul(s, d2))), mu * mu);
    TPoly lin = B.constant(B.of(ans.a[i]));
    for (int j = 0; j < m; ++j) lin = B.add(lin, B.scale(U[j], B.of(ans.b[i][j])));
    TPoly res = B.add(B.add(phi2, B.scale(phi1, alpha * B.of(ans.lambda[i]))), B.mul(U[i], lin));
    for (std::size_t k = 0; k < res.size(); ++k) {
      sys.equations.push_back(res[k]);
      sys.tags.push_back({i, static_cast<int>(k)});
    }
  }
  return sys;
}

Vec AlgebraicSystem::eval(const Vec& x) const {
  Vec f;
  f.reserve(equations.size());
  for (const auto& e : equations) f.push_back(e.eval(x));
  return f;
}

double AlgebraicSystem::scaled_residual(const Vec& x) const {
  double r = 0.0;
  for (const auto& e : equations) r = std::max(r, std::fabs(e.eval(x)) / (1.0 + e.term_scale(x)));
  return r;
}

double AlgebraicSystem::max_residual(const Vec& x) const {
  double r = 0.0;
  for (const auto& e : equations) r = std::max(r, std::fabs(e.eval(x)));
  return r;
}

std::string AlgebraicSystem::dump() const {
  std::ostringstream os;
  os << "unknowns:";
  for (const auto& n : unknowns) os << ' ' << n;
  os << '\n';
  for (std::size_t k = 0; k < equations.size(); ++k) {
    os << 'u' << tags[k].component + 1 << " T^" << tags[k].power << ": " << equations[k].str(unknowns) << '\n';
  }
  return os.str();
}

Vec direct_tw_residual(const TanhAnsatz& ans, double T) {
  const std::size_t m = ans.A.size();
  Vec u(m), d1(m), d2(m);
  for (std::size_t i = 0; i < m; ++i) {
    double v = 0, dv = 0, ddv = 0;
    for (std::size_t k = 0; k < ans.A[i].size(); ++k) {
      double c = ans.A[i][k].value;
      v += c * std::pow(T, static_cast<double>(k));
      if (k >= 1) dv += c * static_cast<double>(k) * std::pow(T, static_cast<double>(k - 1));
      if (k >= 2) ddv += c * static_cast<double>(k * (k - 1)) * std::pow(T, static_cast<double>(k - 2));
    }
    u[i] = v;
    d1[i] = dv;
    d2[i] = ddv;
  }
  const double mu = ans.mu.value, al = ans.alpha.value, s = 1.0 - T * T;
  Vec r(m);
  for (std::size_t i = 0; i < m; ++i) {
    double p1 = mu * s * d1[i];
    double p2 = mu * mu * s * (-2.0 * T * d1[i] + s * d2[i]);
    double lin = ans.a[i].value;
    for (std::size_t j = 0; j < m; ++j) lin += ans.b[i][j].value * u[j];
    r[i] = p2 + al * ans.lambda[i].value * p1 + u[i] * lin;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Newton

std::string status_name(NewtonResult::Status s) {
  switch (s) {
    case NewtonResult::Status::Converged:
      return "converged";
    case NewtonResult::Status::Singular:
      return "singular-jacobian";
    case NewtonResult::Status::MaxIterations:
      return "max-iterations";
    case NewtonResult::Status::Divergence:
      return "divergence";
    case NewtonResult::Status::Stalled:
      return "stalled";
  }
  return "?";
}

namespace {

double inf_norm(const Vec& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::fabs(x));
  return r;
}

double two_norm(const Vec& v) {
  double r = 0.0;
  for (double x : v) r += x * x;
  return std::sqrt(r);
}

bool finite(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

NewtonResult newton_solve(const AlgebraicSystem& sys, const Vec& seed, const NewtonOptions& opt) {
  const std::size_t n = sys.unknowns.size(), neq = sys.equations.size();
  if (seed.size() != n) {
    throw DimensionError("seed has " + std::to_string(seed.size()) + " entries for " + std::to_string(n) +
                         " unknowns");
  }
  NewtonResult res;
  res.x = seed;
  Vec F = sys.eval(res.x);
  res.residual = inf_norm(F);
  if (n == 0 || neq == 0) {
    res.status = res.residual <= opt.tol ? NewtonResult::Status::Converged : NewtonResult::Status::Stalled;
    return res;
  }
  if (!finite(F)) {
    res.status = NewtonResult::Status::Divergence;
    return res;
  }
  for (int it = 0; it < opt.max_iter; ++it) {
    res.iterations = it;
    Eigen::MatrixXd J(neq, n);
    for (std::size_t j = 0; j < n; ++j) {
      Vec xp = res.x;
      double h = 1e-7 * (1.0 + std::fabs(xp[j]));
      xp[j] += h;
      Vec Fp = sys.eval(xp);
      for (std::size_t k = 0; k < neq; ++k) J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = (Fp[k] - F[k]) / h;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double smax = sv(0), smin = sv(sv.size() - 1);
    // A rank-deficient Jacobian means the iterate is not an isolated root, even if F vanishes there.
    if (sv.size() < static_cast<Eigen::Index>(n) || !(smax > 0.0) || smin / smax < opt.singular_ratio) {
      res.status = NewtonResult::Status::Singular;
      return res;
    }
    if (res.residual <= opt.tol) {
      res.status = NewtonResult::Status::Converged;
      return res;
    }
    Eigen::VectorXd f = Eigen::Map<const Eigen::VectorXd>(F.data(), static_cast<Eigen::Index>(neq));
    Eigen::VectorXd dx = svd.solve(-f);
    const double base = two_norm(F);
    double step = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls, step *= 0.5) {
      Vec xn = res.x;
      for (std::size_t j = 0; j < n; ++j) xn[j] += step * dx(static_cast<Eigen::Index>(j));
      Vec Fn = sys.eval(xn);
      if (!finite(Fn) || !finite(xn)) continue;
      if (two_norm(Fn) < base) {
        res.x = xn;
        F = Fn;
        res.residual = inf_norm(F);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.status = res.residual <= opt.tol ? NewtonResult::Status::Converged : NewtonResult::Status::Stalled;
      return res;
    }
    if (inf_norm(res.x) > 1e8) {
      res.status = NewtonResult::Status::Divergence;
      return res;
    }
  }
  res.iterations = opt.max_iter;
  res.status = NewtonResult::Status::MaxIterations;
  return res;
}

MultistartResult multistart_solve(const AlgebraicSystem& sys, int draws, double range, std::uint64_t seed,
                                  const NewtonOptions& opt) {
  MultistartResult out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-range, range);
  const std::size_t n = sys.unknowns.size();
  for (int d = 0; d < draws; ++d) {
    Vec x0(n);
    for (auto& v : x0) v = dist(rng);
    NewtonResult r = newton_solve(sys, x0, opt);
    if (r.ok()) {
      bool seen = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const Vec& s) {
        for (std::size_t k = 0; k < n; ++k) {
          if (std::fabs(s[k] - r.x[k]) > 1e-6 * (1.0 + std::fabs(s[k]))) return false;
        }
        return true;
      });
      if (!seen) out.solutions.push_back(r.x);
    }
    out.starts.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

InstanceReport verify_tanh_solution(const ClosedFormSolution& sol) {
  if (!sol.tanh_form) throw UnsupportedError(sol.id + " is not a tanh-type solution");
  TanhAnsatz a = tanh_ansatz_from_form(sol.model, *sol.tanh_form);
  AlgebraicSystem sys = build_system(a);
  InstanceReport rep;
  rep.id = sol.id;
  rep.degrees = a.degrees;
  rep.equations = static_cast<int>(sys.equations.size());
  rep.max_residual = sys.max_residual({});
  rep.scaled_residual = sys.scaled_residual({});
  return rep;
}

InstanceReport verify_catalog_instance(const std::string& id, const ParamMap& params) {
  const CatalogEntry& e = catalog_entry(id);
  if (!e.tanh_type) throw UnsupportedError(id + " is not a tanh-type catalog entry");
  return verify_tanh_solution(instantiate(id, params));
}

RecoveryResult recover_from_perturbed_seed(const ClosedFormSolution& sol, double rel, const NewtonOptions& opt) {
  if (!sol.tanh_form) throw UnsupportedError(sol.id + " is not a tanh-type solution");
  TanhAnsatz a = tanh_ansatz_from_form(sol.model, *sol.tanh_form);
  for (std::size_t i = 0; i < a.A.size(); ++i)
    for (std::size_t k = 0; k < a.A[i].size(); ++k)
      a.A[i][k] = Scalar::var("A" + std::to_string(i + 1) + std::to_string(k), a.A[i][k].value);
  a.mu = Scalar::var("mu", a.mu.value);
  a.alpha = Scalar::var("alpha", a.alpha.value);
  for (std::size_t i = 1; i < a.lambda.size(); ++i)
    a.lambda[i] = Scalar::var("lambda" + std::to_string(i + 1), a.lambda[i].value);
  const AlgebraicSystem sys = build_system(a);
  RecoveryResult r;
  r.unknowns = sys.unknowns;
  r.truth = a.seed();
  r.seed = r.truth;
  for (double& v : r.seed) v *= 1.0 + rel;
  r.newton = newton_solve(sys, r.seed, opt);
  for (std::size_t k = 0; k < r.truth.size(); ++k)
    r.max_error = std::max(r.max_error, std::abs(r.newton.x[k] - r.truth[k]));
  return r;
}

}  // namespace dlv
