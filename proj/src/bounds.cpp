#include "ymbounds/bounds.hpp"

#include <cmath>
#include <numbers>

#include "ymbounds/errors.hpp"

namespace ymb {
namespace {

constexpr double kPi = std::numbers::pi;

QuadratureScheme grid_for(int n, const QuadratureScheme& scheme) {
  if (n > 2 && scheme.kind == QuadratureKind::TensorGrid) {
    QuadratureScheme mc = QuadratureScheme::for_group(n);
    mc.rng = scheme.rng;
    return mc;
  }
  return scheme;
}

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("coupling beta must be finite and nonnegative");
}

}  // namespace

double ModelParams::beta() const { return std::pow(a, d - 4) / g2; }

void ModelParams::validate() const {
  (void)Lattice(d, L, a, bc);
  if (n < 1 || n > kMaxGroupDim) throw ValidationError("group dimension N must lie in [1, 4]");
  if (!(g0 > 0.0) || !std::isfinite(g0)) throw ValidationError("g0 must be positive and finite");
  if (!(g2 > 0.0)) throw ValidationError("g^2 must be positive");
  if (g2 > g0 * g0 * (1.0 + 1e-12)) throw ValidationError("g^2 must not exceed g0^2");
}

std::string to_string(Side side) { return side == Side::Upper ? "upper" : "lower"; }

BoundReport make_report(double value, double bound, Side side, double tolerance) {
  BoundReport r;
  r.value = value;
  r.bound = bound;
  r.side = side;
  r.tolerance = tolerance;
  r.margin = side == Side::Upper ? bound - value : value - bound;
  r.satisfied = std::isfinite(r.margin) && r.margin >= -tolerance;
  return r;
}

QuadratureResult z_u(int n, double beta, const QuadratureScheme& scheme) {
  check_beta(beta);
  ClassFunction f{n, [beta](std::span<const double> lam) {
                    double s = 0.0;
                    for (double l : lam) s += 1.0 - std::cos(l);
                    return Complex(std::exp(-2.0 * beta * s), 0.0);
                  }};
  return weyl_integrate(f, grid_for(n, scheme));
}

QuadratureResult z_l(int n, int d, double beta, const QuadratureScheme& scheme) {
  check_beta(beta);
  if (d < 2 || d > kMaxDim) throw ValidationError("z_l: dimension must be 2, 3 or 4");
  const double k = 8.0 * n * (d - 1) * beta;
  ClassFunction f{n, [k](std::span<const double> lam) {
                    double s = 0.0;
                    for (double l : lam) s += l * l;
                    return Complex(std::exp(-k * s), 0.0);
                  }};
  return weyl_integrate(f, grid_for(n, scheme));
}

QuadratureResult z_u_source(int n, double beta, Complex j, const QuadratureScheme& scheme) {
  check_beta(beta);
  if (!std::isfinite(std::abs(j))) throw ValidationError("source strength must be finite");
  const double s = std::abs(j) * std::sqrt(beta);
  ClassFunction f{n, [beta, s](std::span<const double> lam) {
                    double src = 0.0;
                    double act = 0.0;
                    for (double l : lam) {
                      src += std::abs(std::sin(l));
                      act += 1.0 - std::cos(l);
                    }
                    return Complex(std::exp(s * src - 2.0 * beta * act), 0.0);
                  }};
  return weyl_integrate(f, grid_for(n, scheme));
}

double c_upper(int n) {
  const EnsembleConstants e = ensemble_constants(n);
  return static_cast<double>(n * n) * std::log(kPi / 2.0) + std::log(e.gue) - std::log(e.cue);
}

double c_lower(int n, int d, double g0, const QuadratureScheme& scheme) {
  if (!(g0 > 0.0)) throw ValidationError("c_lower: g0 must be positive");
  const EnsembleConstants e = ensemble_constants(n);
  const double k = 8.0 * n * (d - 1);
  const double nn = static_cast<double>(n);
  const QuadratureResult ig = i_beta(2, kPi * std::sqrt(k) / (2.0 * g0), n, scheme);
  return -std::log(e.cue) + 0.5 * nn * (nn - 1.0) * std::log(4.0 / (kPi * kPi)) - 0.5 * nn * nn * std::log(k) +
         std::log(ig.real());
}

double c_upper_source(int n) {
  const EnsembleConstants e = ensemble_constants(n);
  const double nn = static_cast<double>(n);
  return (nn * nn + nn / 4.0) * std::log(kPi) + 0.5 * std::log(e.gse) - std::log(e.cue);
}

double z_u_source_bound(int n, double beta, Complex j) {
  const double nn = static_cast<double>(n);
  const double aj = std::abs(j);
  return std::pow(beta, -nn * nn / 2.0) * std::exp(c_upper_source(n) + (kPi * kPi / 8.0) * nn * aj * aj);
}

double jensen_xi(int n, double beta) { return std::exp(-2.0 * n * beta); }

SinglePlaquetteBounds single_plaquette_bounds(const ModelParams& params, const QuadratureScheme& scheme) {
  params.validate();
  SinglePlaquetteBounds b;
  const int n = params.n;
  const double nn = static_cast<double>(n);
  b.beta = params.beta();
  b.zu = z_u(n, b.beta, scheme);
  b.zl = z_l(n, params.d, b.beta, scheme);
  b.c_u = c_upper(n);
  b.c_l = c_lower(n, params.d, params.g0, scheme);
  b.xi = jensen_xi(n, b.beta);
  const double scale = std::pow(b.beta, -nn * nn / 2.0);
  const double upper = scale * std::exp(b.c_u);
  const double lower = scale * std::exp(b.c_l);
  // The I_2 factor of c_l is itself a quadrature at tolerance rel_tol.
  b.upper = make_report(b.zu.real(), upper, Side::Upper, b.zu.error);
  b.lower = make_report(b.zl.real(), lower, Side::Lower, b.zl.error + scheme.rel_tol * lower);
  b.ordering = make_report(b.zl.real(), b.zu.real(), Side::Upper, b.zu.error + b.zl.error);
  b.jensen = make_report(b.xi, b.zu.real(), Side::Upper, b.zu.error);
  return b;
}

double normalized_free_energy_from_log(double log_z, const ModelParams& params) {
  params.validate();
  if (!std::isfinite(log_z)) throw ValidationError("free energy needs a finite ln Z");
  const double lr = static_cast<double>(closed_form_counts(params.d, params.L).retained);
  const double nn = static_cast<double>(params.n);
  return 0.5 * nn * nn * std::log(params.beta()) + log_z / lr;
}

double normalized_free_energy(double z, const ModelParams& params) {
  if (!(z > 0.0)) throw ValidationError("partition function must be positive");
  return normalized_free_energy_from_log(std::log(z), params);
}

FreeEnergyWindow free_energy_window(const ModelParams& params, double c_u, double c_l) {
  params.validate();
  FreeEnergyWindow w{c_l, c_u};
  if (params.bc == Boundary::Periodic) {
    const LatticeCounts c = closed_form_counts(params.d, params.L);
    const double ratio = static_cast<double>(c.retained + c.extra_bonds) / static_cast<double>(c.retained);
    const double nn = static_cast<double>(params.n);
    const double half_log_beta = 0.5 * nn * nn * std::log(params.beta());
    w.lower = half_log_beta + ratio * (c_l - half_log_beta);
  }
  return w;
}

}  // namespace ymb
