#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ymbounds/group.hpp"
#include "ymbounds/lattice.hpp"

namespace ymb {

/// Bond unitaries on a lattice. Gauge-fixed bonds read as the identity.
class GaugeConfig {
 public:
  GaugeConfig(Lattice lattice, int n, std::optional<GaugeFixing> fixing = std::nullopt);

  const Lattice& lattice() const { return lattice_; }
  int group_dim() const { return n_; }
  const std::optional<GaugeFixing>& gauge_fixing() const { return fixing_; }

  void assign(const Bond& b, const UnitaryMatrix& u);
  bool is_fixed(const Bond& b) const;
  bool is_assigned(const Bond& b) const;
  /// Throws ValidationError for a bond that is neither fixed nor assigned.
  UnitaryMatrix link(const Bond& b) const;

  /// Bonds carrying integration variables: every lattice bond not fixed by the gauge.
  std::vector<Bond> free_variables() const;

 private:
  Lattice lattice_;
  int n_;
  std::optional<GaugeFixing> fixing_;
  std::vector<CMatrix> links_;
  std::vector<char> assigned_;
};

/// Haar-random assignment of every non-fixed bond.
GaugeConfig random_config(const Lattice& lattice, int n, Rng& rng, std::optional<GaugeFixing> fixing = std::nullopt);

/// U_b -> V(x) U_b V(y)^dagger for b = (x -> y). Fixed bonds are materialised
/// as the identity first; the result carries no gauge fixing.
GaugeConfig gauge_transformed(const GaugeConfig& config, std::span<const UnitaryMatrix> site_matrices);

UnitaryMatrix holonomy(const GaugeConfig& config, const Plaquette& p);

/// A_p = 2 Re Tr(1 - U_p) = ||U_p - 1||_HS^2.
double plaquette_action(const UnitaryMatrix& holonomy);

/// k N sum_j ||X_j||_HS^2 for the k = 1..4 principal logs of the retained bonds of one plaquette.
double plaquette_quadratic_bound(std::span<const HermitianMatrix> bond_logs);

struct ActionWithBound {
  double total = 0.0;  ///< sum_p A_p
  double bound = 0.0;  ///< 2(d-1) 4N sum_b ||X_b||_HS^2 over non-fixed bonds
};

ActionWithBound total_action(const GaugeConfig& config);

/// Dense per-plaquette bond-slot table for fast action evaluation.
struct PlaquetteTable {
  std::vector<std::array<std::uint32_t, 4>> slots;

  static PlaquetteTable build(const Lattice& lattice);
  static PlaquetteTable build(const Lattice& lattice, std::span<const Plaquette> plaquettes);
};

/// Sum of 2 Re Tr(1 - U_p) over the table, links indexed by bond slot.
double wilson_action(const PlaquetteTable& table, std::span<const CMatrix> links);
/// Re Tr U_p and Im Tr U_p for one plaquette of the table.
Complex plaquette_trace(const std::array<std::uint32_t, 4>& slots, std::span<const CMatrix> links);

struct QuadraticBoundReport {
  int n = 0;
  int retained = 0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  ///< max A_p / bound over samples with bound > 0
};

/// Samples `retained` Haar bonds per plaquette (the rest identity) and checks
/// A_p <= k N sum_j |lambda_j|^2, allowing only the floating-point error of A_p.
QuadraticBoundReport verify_quadratic_bound(int n, int retained, std::size_t samples, RngState rng);

/// A smooth continuum gluon potential A_mu(x) with coupling g.
struct GluonField {
  int n = 1;
  int d = 2;
  double g = 1.0;
  std::function<HermitianMatrix(int mu, std::span<const double> x)> potential;

  HermitianMatrix at(int mu, std::span<const double> x) const { return potential(mu, x); }
};

/// A_mu(x) = C_mu + sum_nu x_nu G_{mu nu} with Gaussian Lie coordinates.
GluonField affine_gluon_field(int n, int d, double g, Rng& rng, double scale = 1.0);

/// Bond unitaries exp(i a g A_mu(x)) with x = a (site - 1) in physical units.
GaugeConfig config_from_field(const Lattice& lattice, const GluonField& field);

struct SmallSpacingCheck {
  double action = 0.0;        ///< A_p at spacing a
  double continuum = 0.0;     ///< a^4 g^2 Tr[F^a_{mu nu}]^2
  double ratio = 0.0;         ///< action / continuum
  bool degenerate = false;    ///< field strength vanishes; ratio undefined
};

/// Compares the plaquette action at physical point x with its field-strength
/// approximation, using one-sided finite differences of step a.
SmallSpacingCheck small_spacing_consistency(const GluonField& field, std::span<const double> x, int mu, int nu,
                                            double a);

}  // namespace ymb
