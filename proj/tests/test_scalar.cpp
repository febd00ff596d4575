#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "doctest.h"
#include "oracles.hpp"
#include "ymbounds/errors.hpp"
#include "ymbounds/scalar.hpp"

using namespace ymb;

namespace {

LatticeSeparation sep(int a, int b = 0, int c = 0, int d = 0) { return LatticeSeparation{{a, b, c, d}}; }

}  // namespace

TEST_CASE("hopping parameter and scale factor") {
  for (int d = 2; d <= 4; ++d) CHECK(scaled_hopping(ScalarFieldParams{d, 0.5, 0.0, 1.3}) == doctest::Approx(1.0 / (2 * d)));
  CHECK(scaled_hopping(ScalarFieldParams{4, 0.5, 2.0, 1.0}) == doctest::Approx(1.0 / 9.0));
  CHECK(ScalarFieldParams{4, 1.0, 1.0, 1.0}.scale_factor() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(scaled_hopping(ScalarFieldParams{3, 0.0, 1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(scaled_hopping(ScalarFieldParams{3, 1.0, -1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(scaled_hopping(ScalarFieldParams{3, 1.0, 1.0, 0.0}), ValidationError);
}

TEST_CASE("scaled and unscaled propagators differ by s^2") {
  for (int d = 3; d <= 4; ++d) {
    for (double a : {1.0, 0.5, 0.25}) {
      const ScalarFieldParams p{d, a, 1.0, 1.0};
      for (const LatticeSeparation& s : {sep(0), sep(1), sep(2, 1), sep(0, 3, 1, 0), sep(5, 0, 2, 1)}) {
        const double scaled = propagator_scaled(p, s);
        const double unscaled = propagator_unscaled(p, s);
        CHECK(scaled == doctest::Approx(p.scale_factor_squared() * unscaled).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("propagator symmetry and monotonicity") {
  const ScalarFieldParams p{3, 1.0, 1.0, 1.0};
  double previous = 1e300;
  for (int n = 0; n <= 6; ++n) {
    const double v = propagator_unscaled(p, sep(n, 1));
    CHECK(v > 0.0);
    CHECK(v < previous);
    CHECK(std::abs(v - propagator_unscaled(p, sep(-n, -1))) <= 1e-12 * v);
    previous = v;
  }
}

TEST_CASE("proper-time and Brillouin-zone routes agree") {
  QuadratureScheme scheme;
  scheme.rel_tol = 1e-10;
  for (double m : {0.5, 1.0}) {
    const ScalarFieldParams p{3, 1.0, m, 1.0};
    for (const LatticeSeparation& s : {sep(0), sep(1, 1), sep(2, 0, 1)}) {
      const QuadratureResult grid = propagator_scaled_grid(p, s, scheme);
      CHECK(grid.converged);
      CHECK(grid.real() == doctest::Approx(propagator_scaled(p, s)).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(propagator_scaled_grid(ScalarFieldParams{3, 1.0, 0.0, 1.0}, sep(0), scheme), ValidationError);
}

TEST_CASE("massless coincident constant") {
  const double c3 = coincident_constant(3);
  CHECK(c3 == doctest::Approx(oracle::watson_simple_cubic()).epsilon(1e-10));
  CHECK(std::abs(coincident_constant(3, 1e-8) - c3) <= 1e-6 * c3);
  const double c4 = coincident_constant(4);
  CHECK(std::abs(coincident_constant(4, 1e-8) - c4) <= 1e-6 * c4);
  CHECK(c4 < c3);
  CHECK_THROWS_AS(coincident_constant(2), ValidationError);
  CHECK_THROWS_AS(propagator_scaled(ScalarFieldParams{2, 1.0, 0.0, 1.0}, sep(0)), DivergenceError);
  CHECK_THROWS_AS(propagator_unscaled(ScalarFieldParams{2, 0.5, 0.0, 1.0}, sep(1)), DivergenceError);
}

TEST_CASE("coincident value is bounded uniformly in the spacing") {
  for (int d = 3; d <= 4; ++d) {
    const double c0 = coincident_constant(d);
    for (double a : {1.0, 0.5, 0.25, 0.125}) {
      for (double m : {0.0, 0.5, 2.0}) {
        CHECK(propagator_scaled(ScalarFieldParams{d, a, m, 1.0}, sep(0)) <= c0 * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("particle mass") {
  const ScalarFieldParams unit{3, 0.5, 1.0, 0.25};  // m_u a / (2 kappa_u) = 1
  CHECK(particle_mass(unit) == doctest::Approx((2.0 / 0.5) * std::log(1.0 + std::sqrt(2.0))).epsilon(1e-14));

  for (double a : {1.0, 0.3, 0.1}) {
    const ScalarFieldParams p{3, a, 1.3, 0.8};
    const double closed = particle_mass(p);
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve([&](double m) { return dispersion_residual(p, m); }, 1e-6,
                                                        10.0 / a, boost::math::tools::eps_tolerance<double>(52), iters);
    const double numeric = 0.5 * (root.first + root.second);
    CHECK(std::abs(numeric - closed) <= 1e-10 * closed);
    CHECK(std::abs(dispersion_residual(p, closed)) <= 1e-10);
  }

  const ScalarFieldParams coarse{3, 0.1, 1.0, 1.0};
  const ScalarFieldParams fine{3, 0.05, 1.0, 1.0};
  const double ratio = std::abs(particle_mass(coarse) - 1.0) / std::abs(particle_mass(fine) - 1.0);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.01));
  CHECK_THROWS_AS(particle_mass(ScalarFieldParams{3, 1.0, 0.0, 1.0}), ValidationError);
}

TEST_CASE("time-slice correlator decays at the particle mass") {
  for (double a : {1.0, 0.5}) {
    const ScalarFieldParams p{3, a, 1.0, 1.0};
    const DecayFit fit = fit_decay_rate(p, 8, 16);
    CHECK(fit.rate == doctest::Approx(particle_mass(p)).epsilon(1e-10));
    CHECK(fit.max_local_deviation <= 1e-10);
  }
  CHECK_THROWS_AS(fit_decay_rate(ScalarFieldParams{}, 4, 4), ValidationError);
}

TEST_CASE("finite periodic lattice approaches infinite volume") {
  for (int d = 2; d <= 3; ++d) {
    const ScalarFieldParams p{d, 1.0, 2.0, 1.0};
    const Site x{{1, 1, 1, 1}};
    for (const Site& y : {Site{{1, 1, 1, 1}}, Site{{2, 1, 1, 1}}, Site{{2, 3, 1, 1}}}) {
      LatticeSeparation s;
      for (int mu = 0; mu < d; ++mu) s.n[static_cast<std::size_t>(mu)] = y.x[static_cast<std::size_t>(mu)] - 1;
      const double inf = propagator_unscaled(p, s);
      const double fin = finite_lattice_propagator(p, 8, Boundary::Periodic, x, y);
      CHECK(fin == doctest::Approx(inf).epsilon(1e-5));
    }
  }
  // Free boundary: the centre of the box sees the walls only weakly.
  const ScalarFieldParams p{2, 1.0, 2.0, 1.0};
  const double fin = finite_lattice_propagator(p, 9, Boundary::Free, Site{{5, 5}}, Site{{5, 5}});
  CHECK(fin == doctest::Approx(propagator_unscaled(p, sep(0))).epsilon(1e-2));
  CHECK_THROWS_AS(finite_lattice_propagator(ScalarFieldParams{3, 1.0, 0.0, 1.0}, 4, Boundary::Periodic,
                                            Site{{1, 1, 1}}, Site{{1, 1, 1}}),
                  DivergenceError);
}

TEST_CASE("Gaussian generating functional") {
  const Eigen::MatrixXd c1 = Eigen::MatrixXd::Constant(1, 1, 0.7);
  const std::vector<double> k0{0.0};
  const std::vector<double> k1{1.5};
  CHECK(gaussian_genfun(c1, k0) == 1.0);
  CHECK(gaussian_genfun(c1, k1) == doctest::Approx(std::exp(0.7 * 1.5 * 1.5 / 2.0)).epsilon(1e-15));

  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;
  const std::vector<double> k2{0.1, 0.2};
  CHECK_THROWS_AS(gaussian_genfun(bad, k2), ValidationError);
  Eigen::MatrixXd skew(2, 2);
  skew << 1.0, 0.1, 0.0, 1.0;
  CHECK_THROWS_AS(gaussian_genfun(skew, k2), ValidationError);
  CHECK_THROWS_AS(gaussian_genfun(c1, k2), ValidationError);

  // Covariance of three nearby sites from the scaled propagator; bounded by C_0.
  for (double a : {1.0, 0.25}) {
    const ScalarFieldParams p{3, a, 1.0, 1.0};
    const std::array<LatticeSeparation, 3> pts{sep(0), sep(1), sep(1, 1)};
    Eigen::MatrixXd c(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        LatticeSeparation s;
        for (std::size_t mu = 0; mu < 4; ++mu) s.n[mu] = pts[i].n[mu] - pts[j].n[mu];
        c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = propagator_scaled(p, s);
      }
    }
    const double c0 = coincident_constant(3);
    for (const std::vector<double>& k : {std::vector<double>{0.3, -0.5, 1.0}, std::vector<double>{1.0, 1.0, 1.0}}) {
      CHECK(gaussian_genfun(c, k) <= gaussian_genfun_bound(c0, k));
    }
  }
}
