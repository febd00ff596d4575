#pragma once

// Free lattice scalar field: scaled and unscaled propagators, hopping
// parameter, particle mass and the Gaussian generating functional.

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ymbounds/lattice.hpp"
#include "ymbounds/weyl.hpp"

namespace ymb {

struct ScalarFieldParams {
  int d = 3;
  double a = 1.0;
  double m_u = 1.0;      ///< unscaled mass, >= 0
  double kappa_u = 1.0;  ///< unscaled hopping parameter, > 0

  void validate() const;
  /// s^2 = a^{d-2} (m_u^2 a^2 + 2 d kappa_u^2).
  double scale_factor_squared() const;
  double scale_factor() const;
};

/// Separation in lattice units: the physical separation is a * n.
struct LatticeSeparation {
  std::array<int, kMaxDim> n{};
};

/// kappa^2 = 1 / (2d + (m_u a / kappa_u)^2).
double scaled_hopping(const ScalarFieldParams& p);

/// Default absolute-relative tolerance of the proper-time integrals.
inline constexpr double kPropagatorTol = 1e-13;

/// C_a(n) = (2 pi)^{-d} int e^{iqn} / (1 - 2 kappa^2 sum cos q) d^d q, evaluated as
/// int_0^inf e^{-t(1 - 2 d kappa^2)} prod_mu e^{-2 kappa^2 t} I_{n_mu}(2 kappa^2 t) dt.
/// Throws DivergenceError for massless d = 2.
double propagator_scaled(const ScalarFieldParams& p, const LatticeSeparation& sep, double tol = kPropagatorTol);

/// C^u_a(n) = (1 / (2 (2 pi)^d)) int_BZ e^{ip.an} / D_a(p) d^d p, evaluated as
/// (1/2) int_0^inf e^{-t m_u^2 / 2} prod_mu a^{-1} e^{-x} I_{n_mu}(x) dt, x = t kappa_u^2 / a^2.
double propagator_unscaled(const ScalarFieldParams& p, const LatticeSeparation& sep, double tol = kPropagatorTol);

/// C_a(n) by tensor Gauss-Legendre over the Brillouin zone (massive fields only).
QuadratureResult propagator_scaled_grid(const ScalarFieldParams& p, const LatticeSeparation& sep,
                                        const QuadratureScheme& scheme);

/// Massless coincident value C_0 = (2 pi)^{-d} int [1 - d^{-1} sum cos q]^{-1} d^d q, d in {3, 4}.
double coincident_constant(int d, double tol = kPropagatorTol);

/// m = (2/a) asinh(m_u a / (2 kappa_u)).
double particle_mass(const ScalarFieldParams& p);
/// D_a(p^0 = i m, p = 0) = (kappa_u^2 / a^2)(1 - cosh(m a)) + m_u^2 / 2.
double dispersion_residual(const ScalarFieldParams& p, double m);

/// Zero-spatial-momentum correlator a^{d-1} sum_x C^u_a(t, x) at time separation
/// t = a * steps; decays exactly as exp(-m a steps).
double timeslice_correlator(const ScalarFieldParams& p, int steps, double tol = kPropagatorTol);

struct DecayFit {
  double rate = 0.0;      ///< least-squares slope of -ln C against physical time
  double max_local_deviation = 0.0;  ///< max |local rate - rate|
};

DecayFit fit_decay_rate(const ScalarFieldParams& p, int first_step, int last_step);

/// Unscaled two-point function on a finite lattice with extent L from the dense
/// spectral decomposition of the quadratic form, for sites x and y.
double finite_lattice_propagator(const ScalarFieldParams& p, int L, Boundary bc, const Site& x, const Site& y);

/// exp((K, C K) / 2). Throws ValidationError for non-symmetric or non-PSD C.
double gaussian_genfun(const Eigen::MatrixXd& covariance, std::span<const double> strengths);
/// exp(C_0 r sum_j K_j^2).
double gaussian_genfun_bound(double c0, std::span<const double> strengths);

}  // namespace ymb
