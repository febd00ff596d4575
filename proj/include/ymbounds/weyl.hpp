#pragma once

// Class-function integration over U(N) through the eigenvalue density,
// random-matrix normalization constants and truncated Gaussian ensemble integrals.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ymbounds/group.hpp"

namespace ymb {

/// A function of the angular eigenvalues only. Must be symmetric in its arguments.
struct ClassFunction {
  int n = 1;
  std::function<Complex(std::span<const double> phases)> eval;
};

enum class QuadratureKind { TensorGrid, MonteCarlo };

struct QuadratureScheme {
  QuadratureKind kind = QuadratureKind::TensorGrid;
  int resolution = 16;          ///< Gauss-Legendre points per panel (grid), >= 16
  int max_refinements = 3;      ///< point doublings before giving up (grid)
  int graded_levels = 12;       ///< geometric panels towards the origin (grid)
  double rel_tol = 1e-8;        ///< convergence threshold (grid)
  std::size_t samples = 1'000'000;  ///< sample count (Monte Carlo)
  RngState rng{};

  /// Grid for N <= 2, Monte Carlo above.
  static QuadratureScheme for_group(int n);
};

struct QuadratureResult {
  Complex value{};
  double error = 0.0;  ///< refinement difference plus rounding floor, or one standard error
  bool converged = false;
  std::size_t evaluations = 0;

  double real() const { return value.real(); }
};

/// rho(lambda) = prod_{j<k} |e^{i lambda_j} - e^{i lambda_k}|^2.
double cue_density(std::span<const double> phases);
/// rho-hat(y) = prod_{j<k} (y_j - y_k)^2.
double vandermonde_squared(std::span<const double> y);

/// Haar average of a class function, (1/N_C) int_{(-pi,pi]^N} f rho d^N lambda.
QuadratureResult weyl_integrate(const ClassFunction& f, const QuadratureScheme& scheme = {});

/// Tensor Gauss-Legendre integral of g over the box prod_j [lo_j, hi_j] using the
/// given per-axis breakpoints (shared by all axes), with point doubling until
/// the relative change drops below scheme.rel_tol.
QuadratureResult tensor_integrate(int dim, std::span<const double> breakpoints,
                                  const std::function<double(std::span<const double>)>& g,
                                  const QuadratureScheme& scheme);

/// Breakpoints on (-pi, pi] graded geometrically towards 0.
std::vector<double> graded_breakpoints(double half_width, int levels);

struct EnsembleConstants {
  int n = 1;
  double cue = 0.0;  ///< N_C = (2 pi)^N N!
  double gue = 0.0;  ///< N_G = (2 pi)^{N/2} 2^{-N^2/2} prod j!
  double gse = 0.0;  ///< N_S = (2 pi)^{N/2} 4^{-N^2} prod (2j)!
};

EnsembleConstants ensemble_constants(int n);

/// Cutoff used in place of an infinite box for the Gaussian ensemble integrals.
inline constexpr double kInfiniteCutoff = 12.0;

/// I_beta(u) = int_{(-u,u)^N} exp(-beta/2 sum y^2) rho-hat(y)^{beta/2} d^N y for beta in {2, 4}.
/// u = +infinity is replaced by kInfiniteCutoff.
QuadratureResult i_beta(int beta, double cutoff, int n, const QuadratureScheme& scheme = {});

}  // namespace ymb
