#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ymbounds/errors.hpp"
#include "ymbounds/wilson.hpp"

using namespace ymb;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<CMatrix> link_table(const GaugeConfig& cfg) {
  const Lattice& lat = cfg.lattice();
  std::vector<CMatrix> links(lat.bond_slots(), CMatrix::Identity(cfg.group_dim(), cfg.group_dim()));
  for (const Bond& b : lat.bonds()) links[lat.bond_index(b)] = cfg.link(b).matrix();
  return links;
}

UnitaryMatrix phase(double theta) {
  const std::vector<double> p{theta};
  return UnitaryMatrix::diagonal(p);
}

}  // namespace

TEST_CASE("holonomy examples") {
  const Lattice lat(2, 2, 1.0, Boundary::Free);
  GaugeConfig cfg(lat, 2);
  for (const Bond& b : lat.bonds()) cfg.assign(b, UnitaryMatrix::identity(2));
  const Plaquette p = lat.plaquettes().front();
  CHECK((holonomy(cfg, p).matrix() - CMatrix::Identity(2, 2)).norm() == 0.0);

  GaugeConfig abelian(lat, 1);
  const std::array<double, 4> theta{0.3, -1.1, 0.7, 2.0};
  for (std::size_t j = 0; j < 4; ++j) abelian.assign(p.bonds[j], phase(theta[j]));
  const Complex h = holonomy(abelian, p).matrix()(0, 0);
  CHECK(std::abs(h - std::polar(1.0, theta[0] + theta[1] - theta[2] - theta[3])) < 1e-14);

  GaugeConfig partial(lat, 1);
  partial.assign(p.bonds[0], phase(0.1));
  CHECK_THROWS_AS(holonomy(partial, p), ValidationError);
}

TEST_CASE("fixed bonds read as identity") {
  const Lattice lat(2, 3, 1.0, Boundary::Free);
  const GaugeFixing g = enhanced_temporal_gauge(lat);
  Rng rng(RngState{9, 0});
  const GaugeConfig cfg = random_config(lat, 2, rng, g);
  for (const Bond& b : g.fixed) {
    CHECK(cfg.is_fixed(b));
    CHECK((cfg.link(b).matrix() - CMatrix::Identity(2, 2)).norm() == 0.0);
  }
  CHECK(cfg.free_variables().size() == g.retained.size());
  GaugeConfig copy = cfg;
  CHECK_THROWS_AS(copy.assign(g.fixed.front(), haar_sample(2, rng)), ValidationError);
}

TEST_CASE("trace of holonomy is gauge invariant") {
  Rng rng(RngState{10, 0});
  for (Boundary bc : {Boundary::Free, Boundary::Periodic}) {
    const Lattice lat(3, 3, 1.0, bc);
    const GaugeConfig cfg = random_config(lat, 2, rng, enhanced_temporal_gauge(lat));
    std::vector<UnitaryMatrix> v;
    for (std::size_t i = 0; i < lat.num_sites(); ++i) v.push_back(haar_sample(2, rng));
    const GaugeConfig moved = gauge_transformed(cfg, v);
    for (const Plaquette& p : lat.plaquettes()) {
      CHECK(std::abs(holonomy(cfg, p).trace() - holonomy(moved, p).trace()) <= 1e-10);
    }
  }
}

TEST_CASE("plaquette action examples") {
  CHECK(plaquette_action(UnitaryMatrix::identity(3)) == 0.0);
  CHECK(plaquette_action(phase(kPi)) == doctest::Approx(4.0).epsilon(1e-15));
  Rng rng(RngState{11, 0});
  for (int i = 0; i < 1000; ++i) {
    const UnitaryMatrix u = haar_sample(3, rng);
    const double a = plaquette_action(u);
    CHECK(a >= 0.0);
    CHECK(a == doctest::Approx((u.matrix() - CMatrix::Identity(3, 3)).squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("quadratic bound examples") {
  const std::vector<HermitianMatrix> zeros(4, HermitianMatrix::zero(2));
  CHECK(plaquette_quadratic_bound(zeros) == 0.0);
  CHECK_THROWS_AS(plaquette_quadratic_bound(std::span<const HermitianMatrix>{}), ValidationError);
  const std::vector<HermitianMatrix> five(5, HermitianMatrix::zero(1));
  CHECK_THROWS_AS(plaquette_quadratic_bound(five), ValidationError);
  CHECK_THROWS_AS(verify_quadratic_bound(2, 0, 10, RngState{}), ValidationError);

  // Single U(1) bond: bound theta^2 against 2(1 - cos theta) on a grid.
  for (int i = 0; i <= 2000; ++i) {
    const double theta = -kPi + 2.0 * kPi * i / 2000.0;
    if (theta == -kPi) continue;
    const std::vector<HermitianMatrix> one{principal_log(phase(theta))};
    const double bound = plaquette_quadratic_bound(one);
    CHECK(bound == doctest::Approx(theta * theta).epsilon(1e-12));
    CHECK(plaquette_action(phase(theta)) <= bound + 1e-15);
  }
}

TEST_CASE("quadratic bound sampling") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 4; ++k) {
      const QuadraticBoundReport r = verify_quadratic_bound(n, k, 20000, RngState{12, static_cast<std::uint64_t>(10 * n + k)});
      CHECK(r.violations == 0);
      CHECK(r.max_ratio <= 1.0 + 1e-12);
      CHECK(r.max_ratio > 0.0);
    }
  }
}

TEST_CASE("total action and its global bound") {
  const Lattice lat(2, 2, 1.0, Boundary::Free);
  const GaugeFixing g = enhanced_temporal_gauge(lat);
  REQUIRE(g.retained.size() == 1);
  for (double theta : {0.0, 0.4, -2.0, kPi}) {
    GaugeConfig cfg(lat, 1, g);
    cfg.assign(g.retained.front(), phase(theta));
    const ActionWithBound a = total_action(cfg);
    CHECK(a.total == doctest::Approx(2.0 * (1.0 - std::cos(theta))));
    CHECK(a.bound == doctest::Approx(8.0 * theta * theta));
    CHECK(a.total <= a.bound + 1e-14);
  }

  Rng rng(RngState{13, 0});
  const Lattice cube(3, 2, 1.0, Boundary::Free);
  const GaugeFixing gc = enhanced_temporal_gauge(cube);
  for (int i = 0; i < 1000; ++i) {
    const ActionWithBound a = total_action(random_config(cube, 2, rng, gc));
    CHECK(a.total >= 0.0);
    CHECK(a.total <= a.bound);
  }
}

TEST_CASE("table action matches holonomy action") {
  Rng rng(RngState{14, 0});
  for (Boundary bc : {Boundary::Free, Boundary::Periodic}) {
    const Lattice lat(3, 3, 1.0, bc);
    const GaugeConfig cfg = random_config(lat, 3, rng);
    double direct = 0.0;
    for (const Plaquette& p : lat.plaquettes()) direct += plaquette_action(holonomy(cfg, p));
    const auto links = link_table(cfg);
    const PlaquetteTable table = PlaquetteTable::build(lat);
    CHECK(wilson_action(table, links) == doctest::Approx(direct).epsilon(1e-12));
    const auto plaqs = lat.plaquettes();
    for (std::size_t i = 0; i < plaqs.size(); ++i) {
      CHECK(std::abs(plaquette_trace(table.slots[i], links) - holonomy(cfg, plaqs[i]).trace()) <= 1e-12);
    }
  }
}

TEST_CASE("small spacing: non-abelian deviation is first order") {
  // delta(a) = ratio - 1 = c1 a + c2 a^2 + ...; the Richardson residual
  // 2 delta(a/2) - delta(a) removes c1 and must shrink fourfold per halving.
  const std::vector<double> x{0.1, -0.2, 0.3, 0.05};
  for (std::uint64_t seed = 15; seed < 18; ++seed) {
    Rng rng(RngState{seed, 0});
    const GluonField f = affine_gluon_field(2, 4, 1.0, rng, 0.5);
    std::vector<double> delta;
    for (double a : {0.1, 0.05, 0.025, 0.0125}) {
      const SmallSpacingCheck c = small_spacing_consistency(f, x, 0, 1, a);
      REQUIRE_FALSE(c.degenerate);
      delta.push_back(c.ratio - 1.0);
      CHECK(std::abs(c.ratio - 1.0) <= 1.0 * a);
    }
    const double r0 = 2.0 * delta[1] - delta[0];
    const double r1 = 2.0 * delta[2] - delta[1];
    const double r2 = 2.0 * delta[3] - delta[2];
    CHECK(r0 / r1 == doctest::Approx(4.0).epsilon(0.25));
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.25));
  }
}

TEST_CASE("small spacing: abelian and commuting fields") {
  GluonField lin;
  lin.n = 1;
  lin.d = 2;
  lin.g = 1.0;
  lin.potential = [](int mu, std::span<const double> x) {
    const std::vector<double> v{mu == 1 ? 0.7 * x[0] : 0.0};
    return HermitianMatrix::diagonal(v);
  };
  const std::vector<double> x{0.0, 0.0};
  for (double a : {0.1, 0.05, 0.025}) {
    const SmallSpacingCheck c = small_spacing_consistency(lin, x, 0, 1, a);
    // Holonomy phase is a^2 g F exactly, so ratio = 2(1 - cos phi) / phi^2.
    const double phi = a * a * 0.7;
    CHECK(c.ratio == doctest::Approx(2.0 * (1.0 - std::cos(phi)) / (phi * phi)).epsilon(1e-8));
    CHECK(std::abs(c.ratio - 1.0) <= a * a);
  }

  Rng rng(RngState{16, 0});
  const HermitianMatrix h = random_hermitian(2, rng);
  GluonField commuting;
  commuting.n = 2;
  commuting.d = 2;
  commuting.g = 1.0;
  commuting.potential = [h](int mu, std::span<const double> x) { return (1.0 + (mu == 1 ? 0.5 * x[0] : 0.0)) * h; };
  std::vector<double> dev;
  for (double a : {0.1, 0.05, 0.025}) dev.push_back(std::abs(small_spacing_consistency(commuting, x, 0, 1, a).ratio - 1.0));
  CHECK(dev[2] < dev[1]);
  CHECK(dev[1] < dev[0]);

  GluonField flat = commuting;
  flat.potential = [h](int, std::span<const double>) { return h; };
  const SmallSpacingCheck deg = small_spacing_consistency(flat, x, 0, 1, 0.1);
  CHECK(deg.degenerate);
  CHECK(std::isnan(deg.ratio));
}

TEST_CASE("config from a smooth field") {
  Rng rng(RngState{17, 0});
  const GluonField f = affine_gluon_field(2, 2, 1.0, rng, 0.3);
  double previous = 1e300;
  for (double a : {0.5, 0.25, 0.125}) {
    const ActionWithBound s = total_action(config_from_field(Lattice(2, 3, a, Boundary::Free), f));
    CHECK(s.total < previous);
    previous = s.total;
  }
}
