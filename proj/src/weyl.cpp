#include "ymbounds/weyl.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/legendre.hpp>

#include "ymbounds/errors.hpp"

namespace ymb {
namespace {

constexpr double kPi = std::numbers::pi;

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// m-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int m) {
  const auto positive = boost::math::legendre_p_zeros<double>(m);
  Rule r;
  for (double x : positive) {
    const double dp = boost::math::legendre_p_prime(m, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes.push_back(x);
    r.weights.push_back(w);
    if (x != 0.0) {
      r.nodes.push_back(-x);
      r.weights.push_back(w);
    }
  }
  return r;
}

// Composite rule over consecutive breakpoints.
Rule composite(std::span<const double> breaks, int m) {
  const Rule base = gauss_legendre(m);
  Rule out;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double half = 0.5 * (breaks[p + 1] - breaks[p]);
    const double mid = 0.5 * (breaks[p + 1] + breaks[p]);
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      out.nodes.push_back(mid + half * base.nodes[i]);
      out.weights.push_back(half * base.weights[i]);
    }
  }
  return out;
}

template <class T>
struct GridSum {
  T value{};
  double l1 = 0.0;
  std::size_t evaluations = 0;
};

template <class T, class F>
GridSum<T> grid_sum(int dim, const Rule& rule, const F& g) {
  const std::size_t m = rule.nodes.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  std::vector<double> x(static_cast<std::size_t>(dim));
  GridSum<T> s;
  while (true) {
    double w = 1.0;
    for (int k = 0; k < dim; ++k) {
      x[static_cast<std::size_t>(k)] = rule.nodes[idx[static_cast<std::size_t>(k)]];
      w *= rule.weights[idx[static_cast<std::size_t>(k)]];
    }
    const T v = g(std::span<const double>(x));
    s.value += w * v;
    s.l1 += w * std::abs(v);
    ++s.evaluations;
    int k = 0;
    while (k < dim && ++idx[static_cast<std::size_t>(k)] == m) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == dim) break;
  }
  return s;
}

template <class T, class F>
QuadratureResult refine(int dim, std::span<const double> breaks, const F& g, const QuadratureScheme& scheme) {
  if (dim < 1) throw ValidationError("quadrature dimension must be positive");
  if (scheme.resolution < 16) throw ValidationError("grid resolution must be at least 16 points per panel");
  if (breaks.size() < 2) throw ValidationError("quadrature needs at least one panel");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  int m = scheme.resolution;
  GridSum<T> coarse = grid_sum<T>(dim, composite(breaks, m), g);
  QuadratureResult out;
  out.value = Complex(coarse.value);
  out.evaluations = coarse.evaluations;
  out.error = std::numeric_limits<double>::infinity();
  for (int r = 0; r < scheme.max_refinements; ++r) {
    m *= 2;
    const GridSum<T> fine = grid_sum<T>(dim, composite(breaks, m), g);
    out.evaluations += fine.evaluations;
    out.value = Complex(fine.value);
    out.error = std::abs(Complex(fine.value) - Complex(coarse.value)) + 100.0 * eps * fine.l1;
    const double scale = std::max(std::abs(Complex(fine.value)), fine.l1);
    if (out.error <= scheme.rel_tol * scale) {
      out.converged = true;
      break;
    }
    coarse = fine;
  }
  return out;
}

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

}  // namespace

QuadratureScheme QuadratureScheme::for_group(int n) {
  QuadratureScheme s;
  if (n > 2) s.kind = QuadratureKind::MonteCarlo;
  return s;
}

double cue_density(std::span<const double> phases) {
  double rho = 1.0;
  for (std::size_t j = 0; j < phases.size(); ++j) {
    for (std::size_t k = j + 1; k < phases.size(); ++k) {
      // |e^{ia} - e^{ib}|^2 = 2 - 2 cos(a - b)
      rho *= 2.0 - 2.0 * std::cos(phases[j] - phases[k]);
    }
  }
  return rho;
}

double vandermonde_squared(std::span<const double> y) {
  double v = 1.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    for (std::size_t k = j + 1; k < y.size(); ++k) v *= (y[j] - y[k]) * (y[j] - y[k]);
  }
  return v;
}

std::vector<double> graded_breakpoints(double half_width, int levels) {
  if (!(half_width > 0.0) || levels < 0) throw ValidationError("graded_breakpoints: bad arguments");
  std::vector<double> b;
  for (int k = 0; k <= levels; ++k) b.push_back(-half_width * std::ldexp(1.0, -k));
  b.push_back(0.0);
  for (int k = levels; k >= 0; --k) b.push_back(half_width * std::ldexp(1.0, -k));
  return b;
}

QuadratureResult tensor_integrate(int dim, std::span<const double> breakpoints,
                                  const std::function<double(std::span<const double>)>& g,
                                  const QuadratureScheme& scheme) {
  return refine<double>(dim, breakpoints, g, scheme);
}

QuadratureResult weyl_integrate(const ClassFunction& f, const QuadratureScheme& scheme) {
  const int n = f.n;
  if (n < 1 || n > kMaxGroupDim) throw ValidationError("weyl_integrate: group dimension out of range");
  if (!f.eval) throw ValidationError("weyl_integrate: empty class function");
  const double n_fact = factorial(n);

  if (scheme.kind == QuadratureKind::MonteCarlo) {
    if (scheme.samples < 2) throw ValidationError("weyl_integrate: need at least two samples");
    // Uniform phases: (1/N_C) int f rho = E_uniform[f rho] / N!
    Rng rng(scheme.rng);
    std::vector<double> lam(static_cast<std::size_t>(n));
    Complex sum{};
    double sq_re = 0.0;
    double sq_im = 0.0;
    for (std::size_t i = 0; i < scheme.samples; ++i) {
      for (double& l : lam) l = kPi * (2.0 * rng.uniform() - 1.0);
      const Complex v = f.eval(lam) * (cue_density(lam) / n_fact);
      sum += v;
      sq_re += v.real() * v.real();
      sq_im += v.imag() * v.imag();
    }
    const double cnt = static_cast<double>(scheme.samples);
    const Complex mean = sum / cnt;
    const double var_re = (sq_re - cnt * mean.real() * mean.real()) / (cnt - 1.0);
    const double var_im = (sq_im - cnt * mean.imag() * mean.imag()) / (cnt - 1.0);
    QuadratureResult out;
    out.value = mean;
    out.error = std::sqrt(std::max(0.0, var_re + var_im) / cnt);
    out.converged = std::isfinite(out.error);
    out.evaluations = scheme.samples;
    return out;
  }

  const double norm = 1.0 / (std::pow(2.0 * kPi, n) * n_fact);
  const auto breaks = graded_breakpoints(kPi, scheme.graded_levels);
  auto g = [&](std::span<const double> lam) { return f.eval(lam) * (cue_density(lam) * norm); };
  return refine<Complex>(n, breaks, g, scheme);
}

EnsembleConstants ensemble_constants(int n) {
  if (n < 1) throw ValidationError("ensemble_constants: N must be positive");
  EnsembleConstants c;
  c.n = n;
  const double nn = static_cast<double>(n);
  double prod_j = 1.0;
  double prod_2j = 1.0;
  for (int j = 1; j <= n; ++j) {
    prod_j *= factorial(j);
    prod_2j *= factorial(2 * j);
  }
  c.cue = std::pow(2.0 * kPi, nn) * factorial(n);
  c.gue = std::pow(2.0 * kPi, nn / 2.0) * std::pow(2.0, -nn * nn / 2.0) * prod_j;
  c.gse = std::pow(2.0 * kPi, nn / 2.0) * std::pow(4.0, -nn * nn) * prod_2j;
  return c;
}

QuadratureResult i_beta(int beta, double cutoff, int n, const QuadratureScheme& scheme) {
  if (beta != 2 && beta != 4) throw ValidationError("I_beta is defined for beta = 2 or 4, got " + std::to_string(beta));
  if (!(cutoff > 0.0)) throw ValidationError("I_beta cutoff must be positive");
  if (n < 1) throw ValidationError("I_beta: N must be positive");
  const double u = std::isinf(cutoff) ? kInfiniteCutoff : std::min(cutoff, kInfiniteCutoff);
  const int panels = std::max(2, static_cast<int>(std::ceil(u)));
  std::vector<double> breaks;
  for (int p = 0; p <= panels; ++p) breaks.push_back(-u + 2.0 * u * p / panels);
  const double b = static_cast<double>(beta);
  auto g = [b](std::span<const double> y) {
    double s = 0.0;
    for (double v : y) s += v * v;
    const double vd = vandermonde_squared(y);
    return std::exp(-0.5 * b * s) * (b == 2.0 ? vd : vd * vd);
  };
  QuadratureScheme grid = scheme;
  grid.kind = QuadratureKind::TensorGrid;
  return refine<double>(n, breaks, g, grid);
}

}  // namespace ymb
