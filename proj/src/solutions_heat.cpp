// Three-species family whose reaction terms vanish along an affine line u = p + q w, v = r + s w,
// so every component solves the heat equation.
#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "dlv/errors.hpp"
#include "dlv/quadrature.hpp"
#include "solutions_internal.hpp"

namespace dlv {

HeatProfile HeatProfile::sine(double beta, double gamma) {
  HeatProfile f;
  f.kind = Kind::Sin;
  f.beta = beta;
  f.gamma = gamma;
  return f;
}

HeatProfile HeatProfile::gaussian(double beta, double center, double width) {
  if (!(width > 0.0)) throw DlvError("gaussian profile needs width > 0");
  HeatProfile f;
  f.kind = Kind::Gaussian;
  f.beta = beta;
  f.center = center;
  f.width = width;
  return f;
}

HeatProfile HeatProfile::tabulated(double y0, double dy, std::vector<double> values) {
  if (values.size() < 4) throw DlvError("tabulated profile needs at least 4 samples");
  if (!(dy > 0.0)) throw DlvError("tabulated profile needs dy > 0");
  HeatProfile f;
  f.kind = Kind::Tabulated;
  f.y0 = y0;
  f.dy = dy;
  f.table = std::move(values);
  return f;
}

namespace {

using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

// (f, f', f'') of a profile; tabulated data is clamped to its end values outside the table.
struct ProfileEval {
  HeatProfile prof;
  std::shared_ptr<Spline> spline;

  explicit ProfileEval(const HeatProfile& f) : prof(f) {
    if (f.kind == HeatProfile::Kind::Tabulated) {
      spline = std::make_shared<Spline>(f.table.begin(), f.table.end(), f.y0, f.dy);
    }
  }

  void operator()(double y, double& v, double& d1, double& d2) const {
    switch (prof.kind) {
      case HeatProfile::Kind::Sin: {
        double s = std::sin(prof.gamma * y), c = std::cos(prof.gamma * y);
        v = prof.beta * s;
        d1 = prof.beta * prof.gamma * c;
        d2 = -prof.gamma * prof.gamma * v;
        return;
      }
      case HeatProfile::Kind::Gaussian: {
        double z = (y - prof.center) / prof.width, w2 = prof.width * prof.width;
        v = prof.beta * std::exp(-z * z);
        d1 = v * (-2.0 * z / prof.width);
        d2 = v * (4.0 * z * z - 2.0) / w2;
        return;
      }
      case HeatProfile::Kind::Tabulated: {
        double lo = prof.y0, hi = prof.y0 + prof.dy * static_cast<double>(prof.table.size() - 1);
        if (y <= lo) {
          v = prof.table.front();
          d1 = d2 = 0.0;
        } else if (y >= hi) {
          v = prof.table.back();
          d1 = d2 = 0.0;
        } else {
          v = (*spline)(y);
          d1 = spline->prime(y);
          d2 = spline->double_prime(y);
        }
        return;
      }
    }
  }
};

struct AffineLine {
  Number p, q, r, s;  // u = p + q w, v = r + s w
  Number b3, c3;
};

AffineLine affine_line(const HeatKernelCoeffs& k) {
  const std::string id = "HK_FAMILY";
  Number den = k.c1 * k.b2 - 1;
  detail::require(!den.is_zero(), id, "c1 b2 != 1");
  AffineLine L;
  L.p = (k.c1 - 1) / den;
  L.q = (k.e1 - k.c1 * k.e2) / den;
  L.r = (k.b2 - 1) / den;
  L.s = (k.e2 - k.b2 * k.e1) / den;
  Number det = L.p * L.s - L.q * L.r;
  detail::require(!det.is_zero(), id, "linear terms independent of the coupling rows (p s - q r != 0)");
  L.b3 = (L.s + L.r) / det;
  L.c3 = -(L.p + L.q) / det;
  return L;
}

DlvModel heat_model(const HeatKernelCoeffs& k, const AffineLine& L, const std::string& name) {
  detail::require(!k.c2.is_zero() && !k.e3.is_zero(), name, "c2 e3 != 0");
  DlvModel::Row3 r1{1, -1, -k.c1, -k.e1};
  DlvModel::Row3 r2{k.c2, -k.c2 * k.b2, -k.c2, -k.c2 * k.e2};
  DlvModel::Row3 r3{k.e3, -k.e3 * L.b3, -k.e3 * L.c3, -k.e3};
  return DlvModel::three_component(1, 1, 1, r1, r2, r3, name);
}

// Lifts a heat-equation jet (W, W_t, W_x, W_xx) onto the affine line.
JetPoint lift_line(double p, double q, double r, double s, double t, double x, double W, double Wt, double Wx,
                   double Wxx) {
  JetPoint j = JetPoint::zeros(3, t, x);
  j.u = {p + q * W, r + s * W, W};
  j.u_t = {q * Wt, s * Wt, Wt};
  j.u_x = {q * Wx, s * Wx, Wx};
  j.u_xx = {q * Wxx, s * Wxx, Wxx};
  return j;
}

ParamMap line_derived(const AffineLine& L) {
  return {{"p", L.p}, {"q", L.q}, {"r", L.r}, {"s", L.s}, {"b3", L.b3}, {"c3", L.c3}};
}

HeatKernelCoeffs coeffs_from(const ParamMap& p) {
  HeatKernelCoeffs k;
  k.c1 = detail::param(p, "c1");
  k.b2 = detail::param(p, "b2");
  k.e1 = detail::param(p, "e1");
  k.e2 = detail::param(p, "e2");
  if (detail::has(p, "c2")) k.c2 = detail::param(p, "c2");
  if (detail::has(p, "e3")) k.e3 = detail::param(p, "e3");
  return k;
}

}  // namespace

ClosedFormSolution heat_kernel_family(const HeatProfile& f, Number w0, const HeatKernelCoeffs& k, int nodes) {
  if (nodes < 1 || nodes > 150) throw DlvError("HK_FAMILY: quadrature nodes must be in 1..150");
  AffineLine L = affine_line(k);
  ClosedFormSolution sol;
  sol.id = "HK_FAMILY";
  sol.model = heat_model(k, L, sol.id);
  sol.autonomous = false;
  const double p = L.p.value(), q = L.q.value(), r = L.r.value(), s = L.s.value(), W0 = w0.value();
  const GaussHermiteRule* rule = &gauss_hermite(nodes);
  ProfileEval pe(f);
  sol.jet_fn = [=](double t, double x) {
    double W = 0.0, Wt = 0.0, Wx = 0.0, Wxx = 0.0;
    if (t == 0.0) {
      pe(x, W, Wx, Wxx);
      W += W0;
      Wt = Wxx;
    } else {
      // y = x + 2 sqrt(t) s turns the kernel integral into a Gauss-Hermite sum
      const double rt = std::sqrt(t), norm = 1.0 / std::sqrt(std::numbers::pi);
      double sv = 0.0, st = 0.0, sx = 0.0, sxx = 0.0;
      for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
        double nd = rule->nodes[i], w = rule->weights[i];
        double v = 0.0, d1 = 0.0, d2 = 0.0;
        pe(x + 2.0 * rt * nd, v, d1, d2);
        sv += w * v;
        sx += w * d1;
        sxx += w * d2;
        st += w * d1 * nd;
      }
      W = W0 + norm * sv;
      Wx = norm * sx;
      Wxx = norm * sxx;
      Wt = norm * st / rt;
    }
    return lift_line(p, q, r, s, t, x, W, Wt, Wx, Wxx);
  };
  sol.valid_fn = [](double t, double) { return t >= 0.0; };
  switch (f.kind) {
    case HeatProfile::Kind::Sin:
      sol.window = {0.0, 1.0, -std::numbers::pi / std::fabs(f.gamma), std::numbers::pi / std::fabs(f.gamma)};
      sol.asymptote = Vec{p + q * W0, r + s * W0, W0};
      break;
    case HeatProfile::Kind::Gaussian:
      sol.window = {0.0, 1.0, f.center - 3.0 * f.width, f.center + 3.0 * f.width};
      sol.asymptote = Vec{p + q * W0, r + s * W0, W0};
      break;
    case HeatProfile::Kind::Tabulated: {
      double hi = f.y0 + f.dy * static_cast<double>(f.table.size() - 1);
      sol.window = {0.0, 1.0, f.y0, hi};
      break;
    }
  }
  sol.derived = line_derived(L);
  return sol;
}

std::vector<double> heat_kernel_combination(const DlvModel& model) {
  if (model.m() != 3) throw DimensionError("heat-kernel combination needs a three-component model");
  // Rows are the affine forms a_i + sum_j b_ij u_j; we need y with y^T M = 0.
  Eigen::Matrix<double, 3, 4> M;
  for (int i = 0; i < 3; ++i) {
    M(i, 0) = model.a(i);
    for (int j = 0; j < 3; ++j) M(i, j + 1) = model.b(i, j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M.transpose(), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(2) > 1e-10 * std::max(1.0, sv(0))) {
    throw RestrictionError("HK_FAMILY", "linear terms are not linearly dependent");
  }
  Eigen::Vector3d y = svd.matrixV().col(2);
  if (std::fabs(y(2)) < 1e-14) throw RestrictionError("HK_FAMILY", "third coefficient of the combination != 0");
  y /= y(2);
  return {y(0), y(1), y(2)};
}

namespace detail {

ClosedFormSolution make_hk_family(const ParamMap& p) {
  int kind = static_cast<int>(param(p, "profile").value());
  double beta = param(p, "beta").value();
  HeatProfile f;
  if (kind == 0) {
    f = HeatProfile::sine(beta, param(p, "gamma").value());
  } else if (kind == 1) {
    f = HeatProfile::gaussian(beta, param(p, "center").value(), param(p, "width").value());
  } else {
    throw RestrictionError("HK_FAMILY", "profile is 0 (sine) or 1 (gaussian)");
  }
  int nodes = static_cast<int>(param(p, "nodes").value());
  return heat_kernel_family(f, param(p, "w0"), coeffs_from(p), nodes);
}

ClosedFormSolution make_hk_sin(const ParamMap& p) {
  HeatKernelCoeffs k = coeffs_from(p);
  AffineLine L = affine_line(k);
  ClosedFormSolution sol;
  sol.model = heat_model(k, L, "HK_SIN");
  sol.autonomous = false;
  const double pp = L.p.value(), q = L.q.value(), r = L.r.value(), s = L.s.value();
  const double W0 = param(p, "w0").value(), B = param(p, "beta").value(), G = param(p, "gamma").value();
  sol.jet_fn = [=](double t, double x) {
    double E = std::exp(-G * G * t), sn = std::sin(G * x), cs = std::cos(G * x);
    double W = W0 + B * sn * E;
    double Wx = B * G * cs * E, Wxx = -G * G * B * sn * E;
    return lift_line(pp, q, r, s, t, x, W, Wxx, Wx, Wxx);
  };
  double half = G != 0.0 ? std::numbers::pi / std::fabs(G) : 1.0;
  sol.window = {0.0, 1.0, -half, half};
  sol.asymptote = Vec{pp + q * W0, r + s * W0, W0};
  sol.derived = line_derived(L);
  return sol;
}

}  // namespace detail

}  // namespace dlv
