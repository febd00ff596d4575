#include "ymbounds/wilson.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ymbounds/errors.hpp"

namespace ymb {

GaugeConfig::GaugeConfig(Lattice lattice, int n, std::optional<GaugeFixing> fixing)
    : lattice_(std::move(lattice)), n_(n), fixing_(std::move(fixing)) {
  if (n < 1 || n > kMaxGroupDim) throw ValidationError("GaugeConfig: group dimension out of range");
  if (fixing_ && fixing_->fixed_mask.size() != lattice_.bond_slots()) {
    throw ValidationError("GaugeConfig: gauge fixing built for a different lattice");
  }
  links_.assign(lattice_.bond_slots(), CMatrix::Identity(n, n));
  assigned_.assign(lattice_.bond_slots(), 0);
}

bool GaugeConfig::is_fixed(const Bond& b) const {
  return fixing_ && fixing_->is_fixed(lattice_.bond_index(b));
}

bool GaugeConfig::is_assigned(const Bond& b) const { return assigned_[lattice_.bond_index(b)] != 0; }

void GaugeConfig::assign(const Bond& b, const UnitaryMatrix& u) {
  if (!lattice_.has_bond(b.origin, b.direction)) throw ValidationError("GaugeConfig: bond not on lattice");
  if (u.dim() != n_) throw ValidationError("GaugeConfig: matrix dimension mismatch");
  if (is_fixed(b)) throw ValidationError("GaugeConfig: cannot assign a gauge-fixed bond");
  const std::size_t slot = lattice_.bond_index(b);
  links_[slot] = u.matrix();
  assigned_[slot] = 1;
}

UnitaryMatrix GaugeConfig::link(const Bond& b) const {
  if (is_fixed(b)) return UnitaryMatrix::identity(n_);
  const std::size_t slot = lattice_.bond_index(b);
  if (!assigned_[slot]) throw ValidationError("GaugeConfig: bond has no assigned unitary");
  return {links_[slot], unchecked};
}

std::vector<Bond> GaugeConfig::free_variables() const {
  std::vector<Bond> out;
  for (const Bond& b : lattice_.bonds()) {
    if (!is_fixed(b)) out.push_back(b);
  }
  return out;
}

GaugeConfig random_config(const Lattice& lattice, int n, Rng& rng, std::optional<GaugeFixing> fixing) {
  GaugeConfig cfg(lattice, n, std::move(fixing));
  for (const Bond& b : cfg.free_variables()) cfg.assign(b, haar_sample(n, rng));
  return cfg;
}

GaugeConfig gauge_transformed(const GaugeConfig& config, std::span<const UnitaryMatrix> site_matrices) {
  const Lattice& lat = config.lattice();
  if (site_matrices.size() != lat.num_sites()) throw ValidationError("gauge_transformed: need one matrix per site");
  GaugeConfig out(lat, config.group_dim());
  for (const Bond& b : lat.bonds()) {
    const UnitaryMatrix& vx = site_matrices[lat.site_index(b.origin)];
    const UnitaryMatrix& vy = site_matrices[lat.site_index(lat.terminal(b))];
    out.assign(b, vx * config.link(b) * vy.adjoint());
  }
  return out;
}

UnitaryMatrix holonomy(const GaugeConfig& config, const Plaquette& p) {
  return config.link(p.bonds[0]) * config.link(p.bonds[1]) * config.link(p.bonds[2]).adjoint() *
         config.link(p.bonds[3]).adjoint();
}

double plaquette_action(const UnitaryMatrix& u) {
  return 2.0 * (static_cast<double>(u.dim()) - u.trace().real());
}

double plaquette_quadratic_bound(std::span<const HermitianMatrix> bond_logs) {
  const std::size_t k = bond_logs.size();
  if (k < 1 || k > 4) throw ValidationError("quadratic bound needs 1 to 4 retained bonds, got " + std::to_string(k));
  const int n = bond_logs.front().dim();
  double sum = 0.0;
  for (const auto& x : bond_logs) {
    if (x.dim() != n) throw ValidationError("quadratic bound: mixed matrix dimensions");
    sum += x.hs_norm_squared();
  }
  return static_cast<double>(k) * n * sum;
}

ActionWithBound total_action(const GaugeConfig& config) {
  const Lattice& lat = config.lattice();
  ActionWithBound out;
  for (const Plaquette& p : lat.plaquettes()) out.total += plaquette_action(holonomy(config, p));
  double logs = 0.0;
  for (const Bond& b : config.free_variables()) logs += principal_log(config.link(b)).hs_norm_squared();
  out.bound = 2.0 * (lat.dim() - 1) * 4.0 * config.group_dim() * logs;
  return out;
}

PlaquetteTable PlaquetteTable::build(const Lattice& lattice) {
  const auto plaqs = lattice.plaquettes();
  return build(lattice, plaqs);
}

PlaquetteTable PlaquetteTable::build(const Lattice& lattice, std::span<const Plaquette> plaquettes) {
  PlaquetteTable t;
  t.slots.reserve(plaquettes.size());
  for (const Plaquette& p : plaquettes) {
    std::array<std::uint32_t, 4> s{};
    for (std::size_t i = 0; i < 4; ++i) s[i] = static_cast<std::uint32_t>(lattice.bond_index(p.bonds[i]));
    t.slots.push_back(s);
  }
  return t;
}

Complex plaquette_trace(const std::array<std::uint32_t, 4>& s, std::span<const CMatrix> links) {
  // Tr(A B C^dagger D^dagger) = <D C, A B>_F
  const CMatrix ab = links[s[0]] * links[s[1]];
  const CMatrix dc = links[s[3]] * links[s[2]];
  Complex tr(0.0, 0.0);
  for (Eigen::Index c = 0; c < ab.cols(); ++c) {
    for (Eigen::Index r = 0; r < ab.rows(); ++r) tr += ab(r, c) * std::conj(dc(r, c));
  }
  return tr;
}

double wilson_action(const PlaquetteTable& table, std::span<const CMatrix> links) {
  if (links.empty()) return 0.0;
  const double n = static_cast<double>(links.front().rows());
  double total = 0.0;
  for (const auto& s : table.slots) total += 2.0 * (n - plaquette_trace(s, links).real());
  return total;
}

QuadraticBoundReport verify_quadratic_bound(int n, int retained, std::size_t samples, RngState state) {
  if (retained < 1 || retained > 4) throw ValidationError("retained bond count must be 1..4");
  Rng rng(state);
  QuadraticBoundReport rep;
  rep.n = n;
  rep.retained = retained;
  rep.samples = samples;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<HermitianMatrix> logs;
  for (std::size_t i = 0; i < samples; ++i) {
    logs.clear();
    std::array<UnitaryMatrix, 4> bonds{UnitaryMatrix::identity(n), UnitaryMatrix::identity(n),
                                       UnitaryMatrix::identity(n), UnitaryMatrix::identity(n)};
    for (int j = 0; j < retained; ++j) {
      bonds[static_cast<std::size_t>(j)] = haar_sample(n, rng);
      logs.push_back(principal_log(bonds[static_cast<std::size_t>(j)]));
    }
    const UnitaryMatrix up = bonds[0] * bonds[1] * bonds[2].adjoint() * bonds[3].adjoint();
    const double action = plaquette_action(up);
    const double bound = plaquette_quadratic_bound(logs);
    // Rounding in the holonomy product and the trace is O(k N^2 eps) in absolute terms.
    const double slack = 16.0 * retained * n * n * eps * (1.0 + bound);
    if (action > bound + slack) ++rep.violations;
    if (bound > 0.0) rep.max_ratio = std::max(rep.max_ratio, action / bound);
  }
  return rep;
}

GluonField affine_gluon_field(int n, int d, double g, Rng& rng, double scale) {
  std::vector<HermitianMatrix> constant;
  std::vector<HermitianMatrix> gradient;  // [mu * d + nu]
  for (int mu = 0; mu < d; ++mu) constant.push_back(random_hermitian(n, rng, scale));
  for (int i = 0; i < d * d; ++i) gradient.push_back(random_hermitian(n, rng, scale));
  GluonField f;
  f.n = n;
  f.d = d;
  f.g = g;
  f.potential = [constant, gradient, d](int mu, std::span<const double> x) {
    HermitianMatrix a = constant[static_cast<std::size_t>(mu)];
    for (int nu = 0; nu < d; ++nu) a = a + x[static_cast<std::size_t>(nu)] * gradient[static_cast<std::size_t>(mu * d + nu)];
    return a;
  };
  return f;
}

GaugeConfig config_from_field(const Lattice& lattice, const GluonField& field) {
  if (field.d != lattice.dim()) throw ValidationError("config_from_field: dimension mismatch");
  GaugeConfig cfg(lattice, field.n);
  const double a = lattice.spacing();
  std::vector<double> x(static_cast<std::size_t>(lattice.dim()));
  for (const Bond& b : lattice.bonds()) {
    for (int mu = 0; mu < lattice.dim(); ++mu) {
      x[static_cast<std::size_t>(mu)] = a * (b.origin.x[static_cast<std::size_t>(mu)] - 1);
    }
    cfg.assign(b, exp_map((a * field.g) * field.at(b.direction, x)));
  }
  return cfg;
}

SmallSpacingCheck small_spacing_consistency(const GluonField& field, std::span<const double> x, int mu, int nu,
                                            double a) {
  if (!(a > 0.0)) throw ValidationError("small_spacing_consistency: spacing must be positive");
  if (static_cast<int>(x.size()) != field.d || mu < 0 || nu <= mu || nu >= field.d) {
    throw ValidationError("small_spacing_consistency: bad point or plane");
  }
  std::vector<double> x_mu(x.begin(), x.end());
  std::vector<double> x_nu(x.begin(), x.end());
  x_mu[static_cast<std::size_t>(mu)] += a;
  x_nu[static_cast<std::size_t>(nu)] += a;

  const HermitianMatrix a_mu = field.at(mu, x);
  const HermitianMatrix a_nu = field.at(nu, x);
  const HermitianMatrix a_nu_fwd = field.at(nu, x_mu);
  const HermitianMatrix a_mu_fwd = field.at(mu, x_nu);
  const double ag = a * field.g;

  const UnitaryMatrix up = exp_map(ag * a_mu) * exp_map(ag * a_nu_fwd) * exp_map(ag * a_mu_fwd).adjoint() *
                           exp_map(ag * a_nu).adjoint();

  const CMatrix commutator = a_mu.matrix() * a_nu.matrix() - a_nu.matrix() * a_mu.matrix();
  const CMatrix f = (a_nu_fwd.matrix() - a_nu.matrix()) / a - (a_mu_fwd.matrix() - a_mu.matrix()) / a +
                    Complex(0.0, field.g) * commutator;

  SmallSpacingCheck out;
  out.action = plaquette_action(up);
  out.continuum = std::pow(a, 4) * field.g * field.g * (f * f).trace().real();
  if (!(out.continuum > std::numeric_limits<double>::min())) {
    out.degenerate = true;
    out.ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    out.ratio = out.action / out.continuum;
  }
  return out;
}

}  // namespace ymb
