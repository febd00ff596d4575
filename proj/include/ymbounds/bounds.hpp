#pragma once

// Single-plaquette partition functions, their closed-form bounds and the
// normalized free energy.

#include <string>

#include "ymbounds/lattice.hpp"
#include "ymbounds/weyl.hpp"

namespace ymb {

struct ModelParams {
  int d = 2;
  int L = 2;
  int n = 1;
  double a = 1.0;
  double g2 = 1.0;
  double g0 = 1.0;
  Boundary bc = Boundary::Free;

  /// beta = a^{d-4} / g^2.
  double beta() const;
  /// Throws ValidationError unless d in {2,3,4}, L >= 2, 1 <= N <= 4, a in (0,1], 0 < g^2 <= g0^2.
  void validate() const;
  Lattice lattice() const { return Lattice(d, L, a, bc); }
};

enum class Side { Upper, Lower };

std::string to_string(Side side);

/// value <= bound (Upper) or value >= bound (Lower). `tolerance` is the
/// numerical uncertainty of the comparison; satisfied iff margin >= -tolerance.
struct BoundReport {
  double value = 0.0;
  double bound = 0.0;
  Side side = Side::Upper;
  double tolerance = 0.0;
  double margin = 0.0;
  bool satisfied = false;
};

BoundReport make_report(double value, double bound, Side side, double tolerance = 0.0);

/// z_u = int exp(-2 beta Re Tr(1 - U)) dsigma(U).
QuadratureResult z_u(int n, double beta, const QuadratureScheme& scheme = {});
/// z_l = int exp(-8 N (d - 1) beta Tr X^2) dsigma(U), U = exp(iX).
QuadratureResult z_l(int n, int d, double beta, const QuadratureScheme& scheme = {});

/// z_u(J) = (1/N_C) int exp(|J| beta^{1/2} sum |sin lambda_j| - 2 beta sum (1 - cos lambda_j)) rho.
QuadratureResult z_u_source(int n, double beta, Complex j, const QuadratureScheme& scheme = {});

/// c_u = ln[(pi/2)^{N^2} N_G / N_C].
double c_upper(int n);
/// c_l = ln[N_C^{-1} (4/pi^2)^{N(N-1)/2} (8N(d-1))^{-N^2/2} I_2(pi sqrt(8N(d-1)) / (2 g0))].
double c_lower(int n, int d, double g0, const QuadratureScheme& scheme = {});
/// c_u' = ln[pi^{N^2 + N/4} N_S^{1/2} / N_C].
double c_upper_source(int n);

/// beta^{-N^2/2} exp(c_u' + (pi^2/8) N |J|^2).
double z_u_source_bound(int n, double beta, Complex j);

struct SinglePlaquetteBounds {
  double beta = 0.0;
  QuadratureResult zu;
  QuadratureResult zl;
  double c_u = 0.0;
  double c_l = 0.0;
  double xi = 0.0;
  BoundReport upper;     ///< z_u <= beta^{-N^2/2} e^{c_u}
  BoundReport lower;     ///< z_l >= beta^{-N^2/2} e^{c_l}
  BoundReport ordering;  ///< z_l <= z_u
  BoundReport jensen;    ///< xi <= z_u
};

SinglePlaquetteBounds single_plaquette_bounds(const ModelParams& params, const QuadratureScheme& scheme = {});

/// xi = exp(-beta int ||U - 1||^2 dsigma) = exp(-2 N beta).
double jensen_xi(int n, double beta);

/// f = (N^2/2) ln beta + ln(Z) / Lambda_r, with Lambda_r the retained-bond count.
double normalized_free_energy(double z, const ModelParams& params);
double normalized_free_energy_from_log(double log_z, const ModelParams& params);

struct FreeEnergyWindow {
  double lower = 0.0;
  double upper = 0.0;
};

/// Finite-volume window implied by the partition-function sandwich: [c_l, c_u]
/// for free boundaries; for periodic ones the lower end carries the extra
/// (Lambda_r + Lambda_e) / Lambda_r factors of z_l.
FreeEnergyWindow free_energy_window(const ModelParams& params, double c_u, double c_l);

}  // namespace ymb
