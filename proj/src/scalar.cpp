#include "ymbounds/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include "ymbounds/errors.hpp"

namespace ymb {
namespace {

constexpr double kPi = std::numbers::pi;

// e^{-x} I_n(x); GSL's default handler aborts on underflow, which is a
// legitimate outcome deep in the tails.
double scaled_bessel(int n, double x) {
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  gsl_sf_result r;
  if (gsl_sf_bessel_In_scaled_e(std::abs(n), x, &r) != GSL_SUCCESS) return 0.0;
  return r.val;
}

template <class F>
double half_line_integral(F&& f, double tol, const char* what) {
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, tol, &error, &l1);
  if (!std::isfinite(value) || error > 1e-8 * std::max(l1, std::numeric_limits<double>::min())) {
    throw DivergenceError(std::string(what) + ": proper-time integral did not converge");
  }
  return value;
}

void check_massless_ir(const ScalarFieldParams& p) {
  if (p.m_u == 0.0 && p.d == 2) {
    throw DivergenceError("massless two-dimensional propagator diverges in infinite volume");
  }
}

}  // namespace

void ScalarFieldParams::validate() const {
  if (d < 2 || d > kMaxDim) throw ValidationError("scalar field dimension must be 2, 3 or 4");
  if (!(a > 0.0 && a <= 1.0)) throw ValidationError("lattice spacing must lie in (0, 1]");
  if (!(m_u >= 0.0) || !std::isfinite(m_u)) throw ValidationError("unscaled mass must be finite and nonnegative");
  if (!(kappa_u > 0.0) || !std::isfinite(kappa_u)) throw ValidationError("unscaled hopping parameter must be positive");
}

double ScalarFieldParams::scale_factor_squared() const {
  return std::pow(a, d - 2) * (m_u * m_u * a * a + 2.0 * d * kappa_u * kappa_u);
}

double ScalarFieldParams::scale_factor() const { return std::sqrt(scale_factor_squared()); }

double scaled_hopping(const ScalarFieldParams& p) {
  p.validate();
  const double r = p.m_u * p.a / p.kappa_u;
  return 1.0 / (2.0 * p.d + r * r);
}

double propagator_scaled(const ScalarFieldParams& p, const LatticeSeparation& sep, double tol) {
  p.validate();
  check_massless_ir(p);
  const double k2 = scaled_hopping(p);
  const double gap = 1.0 - 2.0 * p.d * k2;
  const int d = p.d;
  auto f = [&](double t) {
    double v = std::exp(-t * gap);
    for (int mu = 0; mu < d && v != 0.0; ++mu) v *= scaled_bessel(sep.n[static_cast<std::size_t>(mu)], 2.0 * k2 * t);
    return v;
  };
  return half_line_integral(f, tol, "propagator_scaled");
}

double propagator_unscaled(const ScalarFieldParams& p, const LatticeSeparation& sep, double tol) {
  p.validate();
  check_massless_ir(p);
  const double rate = 0.5 * p.m_u * p.m_u;
  const double c = p.kappa_u * p.kappa_u / (p.a * p.a);
  const double inv_a = 1.0 / p.a;
  const int d = p.d;
  auto f = [&](double t) {
    double v = 0.5 * std::exp(-t * rate);
    for (int mu = 0; mu < d && v != 0.0; ++mu) {
      v *= inv_a * scaled_bessel(sep.n[static_cast<std::size_t>(mu)], c * t);
    }
    return v;
  };
  return half_line_integral(f, tol, "propagator_unscaled");
}

QuadratureResult propagator_scaled_grid(const ScalarFieldParams& p, const LatticeSeparation& sep,
                                        const QuadratureScheme& scheme) {
  p.validate();
  if (p.m_u == 0.0) throw ValidationError("the Brillouin-zone grid route needs a massive field");
  const double k2 = scaled_hopping(p);
  const int d = p.d;
  const double norm = std::pow(2.0 * kPi, -d);
  std::vector<double> breaks;
  for (int i = 0; i <= 4; ++i) breaks.push_back(-kPi + 0.5 * kPi * i);
  auto g = [&](std::span<const double> q) {
    double phase = 0.0;
    double cos_sum = 0.0;
    for (int mu = 0; mu < d; ++mu) {
      phase += q[static_cast<std::size_t>(mu)] * sep.n[static_cast<std::size_t>(mu)];
      cos_sum += std::cos(q[static_cast<std::size_t>(mu)]);
    }
    return norm * std::cos(phase) / (1.0 - 2.0 * k2 * cos_sum);
  };
  return tensor_integrate(d, breaks, g, scheme);
}

double coincident_constant(int d, double tol) {
  if (d != 3 && d != 4) throw ValidationError("the massless coincident constant is finite only for d = 3, 4");
  return propagator_scaled(ScalarFieldParams{d, 1.0, 0.0, 1.0}, LatticeSeparation{}, tol);
}

double particle_mass(const ScalarFieldParams& p) {
  p.validate();
  if (!(p.m_u > 0.0)) throw ValidationError("particle mass needs m_u > 0");
  return (2.0 / p.a) * std::asinh(p.m_u * p.a / (2.0 * p.kappa_u));
}

double dispersion_residual(const ScalarFieldParams& p, double m) {
  return (p.kappa_u * p.kappa_u / (p.a * p.a)) * (1.0 - std::cosh(m * p.a)) + 0.5 * p.m_u * p.m_u;
}

double timeslice_correlator(const ScalarFieldParams& p, int steps, double tol) {
  p.validate();
  if (!(p.m_u > 0.0)) throw ValidationError("time-slice correlator needs m_u > 0");
  const double rate = 0.5 * p.m_u * p.m_u;
  const double c = p.kappa_u * p.kappa_u / (p.a * p.a);
  auto f = [&](double t) { return 0.5 / p.a * std::exp(-t * rate) * scaled_bessel(steps, c * t); };
  return half_line_integral(f, tol, "timeslice_correlator");
}

DecayFit fit_decay_rate(const ScalarFieldParams& p, int first_step, int last_step) {
  if (first_step < 0 || last_step <= first_step) throw ValidationError("decay fit needs first < last");
  std::vector<double> t;
  std::vector<double> y;
  for (int s = first_step; s <= last_step; ++s) {
    t.push_back(p.a * s);
    y.push_back(-std::log(timeslice_correlator(p, s)));
  }
  const double n = static_cast<double>(t.size());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  DecayFit fit;
  fit.rate = (n * sty - st * sy) / (n * stt - st * st);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double local = (y[i + 1] - y[i]) / (t[i + 1] - t[i]);
    fit.max_local_deviation = std::max(fit.max_local_deviation, std::abs(local - fit.rate));
  }
  return fit;
}

double finite_lattice_propagator(const ScalarFieldParams& p, int L, Boundary bc, const Site& x, const Site& y) {
  p.validate();
  const Lattice lat(p.d, L, 1.0, bc);
  const auto n = static_cast<Eigen::Index>(lat.num_sites());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Bond& b : lat.bonds()) {
    const auto i = static_cast<Eigen::Index>(lat.site_index(b.origin));
    const auto j = static_cast<Eigen::Index>(lat.site_index(lat.terminal(b)));
    lap(i, i) += 1.0;
    lap(j, j) += 1.0;
    lap(i, j) -= 1.0;
    lap(j, i) -= 1.0;
  }
  // Quadratic form M = (1/2) a^{d-2} (kappa_u^2 Lap + m_u^2 a^2), two-point function (1/2) M^{-1}.
  const double pre = 0.5 * std::pow(p.a, p.d - 2);
  const Eigen::MatrixXd m =
      pre * (p.kappa_u * p.kappa_u * lap + p.m_u * p.m_u * p.a * p.a * Eigen::MatrixXd::Identity(n, n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const auto& ev = eig.eigenvalues();
  if (!(ev.minCoeff() > 1e-12 * ev.maxCoeff())) {
    throw DivergenceError("finite-lattice quadratic form has a zero mode (massless field)");
  }
  const auto i = static_cast<Eigen::Index>(lat.site_index(x));
  const auto j = static_cast<Eigen::Index>(lat.site_index(y));
  const Eigen::MatrixXd& v = eig.eigenvectors();
  double c = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) c += v(i, k) * v(j, k) / ev(k);
  return 0.5 * c;
}

double gaussian_genfun(const Eigen::MatrixXd& covariance, std::span<const double> strengths) {
  const auto r = covariance.rows();
  if (covariance.cols() != r || static_cast<std::size_t>(r) != strengths.size()) {
    throw ValidationError("covariance must be r x r with r source strengths");
  }
  const double scale = std::max(covariance.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidationError("covariance must be symmetric");
  }
  if (r > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance);
    if (eig.eigenvalues().minCoeff() < -1e-12 * scale) throw ValidationError("covariance must be positive semidefinite");
  }
  const Eigen::Map<const Eigen::VectorXd> k(strengths.data(), r);
  return std::exp(0.5 * k.dot(covariance * k));
}

double gaussian_genfun_bound(double c0, std::span<const double> strengths) {
  double s = 0.0;
  for (double k : strengths) s += k * k;
  return std::exp(c0 * static_cast<double>(strengths.size()) * s);
}

}  // namespace ymb
