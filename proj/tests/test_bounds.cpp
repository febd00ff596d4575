#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "ymbounds/bounds.hpp"
#include "ymbounds/errors.hpp"

using namespace ymb;
constexpr double kPi = std::numbers::pi;

TEST_CASE("single-plaquette integrals: examples") {
  CHECK(z_u(1, 1e-12).real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(z_l(2, 3, 1e-14).real() == doctest::Approx(1.0).epsilon(1e-10));

  const double zu_oracle =
      oracle::integrate([](double t) { return std::exp(-2.0 * (1.0 - std::cos(t))); }, -kPi, kPi) / (2.0 * kPi);
  CHECK(z_u(1, 1.0).real() == doctest::Approx(zu_oracle).epsilon(1e-10));
  CHECK(z_u(1, 1.0).real() == doctest::Approx(std::exp(-2.0) * std::cyl_bessel_i(0.0, 2.0)).epsilon(1e-10));

  const double zl_oracle = oracle::integrate([](double t) { return std::exp(-8.0 * t * t); }, -kPi, kPi) / (2.0 * kPi);
  CHECK(z_l(1, 2, 1.0).real() == doctest::Approx(zl_oracle).epsilon(1e-10));
  CHECK(zl_oracle == doctest::Approx(0.09973).epsilon(1e-4));
}

TEST_CASE("U(2) Boltzmann integral against a character expansion") {
  // z_u for U(2) is det[e^{-2 beta} I_{j-k}(2 beta)]_{j,k=1,2}.
  for (double beta : {0.5, 1.0, 2.0}) {
    const double c0 = oracle::u1_character(0, beta);
    const double c1 = oracle::u1_character(1, beta);
    CHECK(z_u(2, beta).real() == doctest::Approx(c0 * c0 - c1 * c1).epsilon(1e-9));
  }
}

TEST_CASE("closed-form constants") {
  CHECK(std::exp(c_upper(1)) == doctest::Approx(std::sqrt(kPi) / 4.0).epsilon(1e-14));
  const double chain = (1.0 / (2.0 * kPi)) * (1.0 / std::sqrt(8.0)) * std::sqrt(kPi) * std::erf(kPi * std::sqrt(2.0));
  CHECK(std::exp(c_lower(1, 2, 1.0)) == doctest::Approx(chain).epsilon(1e-10));
  CHECK(chain == doctest::Approx(0.0997355701).epsilon(1e-9));
  CHECK_THROWS_AS(c_lower(1, 2, 0.0), ValidationError);

  for (int n = 1; n <= 2; ++n) {
    for (int d = 2; d <= 4; ++d) {
      SinglePlaquetteBounds ref;
      bool first = true;
      for (double a : {0.1, 0.5, 1.0}) {
        for (double g2 : {0.25, 1.0}) {
          const SinglePlaquetteBounds b = single_plaquette_bounds(ModelParams{d, 2, n, a, g2, 1.0, Boundary::Free});
          if (first) {
            ref = b;
            first = false;
          }
          CHECK(std::abs(b.c_u - ref.c_u) <= 1e-12);
          CHECK(std::abs(b.c_l - ref.c_l) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("Jensen lower estimate") {
  CHECK(jensen_xi(1, 1.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(jensen_xi(2, 0.0) == 1.0);
  // Equality of the Jensen bound for U(1) relies on the vanishing Haar moment of Tr U.
  const double mean_action =
      oracle::integrate([](double t) { return 2.0 * (1.0 - std::cos(t)); }, -kPi, kPi) / (2.0 * kPi);
  CHECK(jensen_xi(1, 1.0) == doctest::Approx(std::exp(-mean_action)).epsilon(1e-12));
}

TEST_CASE("sandwich on a reduced grid") {
  for (int d = 2; d <= 4; ++d) {
    for (int n = 1; n <= 2; ++n) {
      for (double a : {0.5, 1.0}) {
        for (double g2 : {0.5, 2.0}) {
          const SinglePlaquetteBounds b =
              single_plaquette_bounds(ModelParams{d, 2, n, a, g2, std::sqrt(2.0), Boundary::Free});
          CAPTURE(d);
          CAPTURE(n);
          CAPTURE(a);
          CAPTURE(g2);
          CHECK(b.zu.converged);
          CHECK(b.zl.converged);
          CHECK(b.upper.satisfied);
          CHECK(b.lower.satisfied);
          CHECK(b.ordering.satisfied);
          CHECK(b.jensen.satisfied);
          CHECK(b.zu.error <= 1e-6 * b.zu.real());
          CHECK(b.zl.error <= 1e-6 * b.zl.real());
        }
      }
    }
  }
}

TEST_CASE("bound reports") {
  const BoundReport up = make_report(1.0, 2.0, Side::Upper);
  CHECK(up.satisfied);
  CHECK(up.margin == 1.0);
  const BoundReport low = make_report(1.0, 2.0, Side::Lower);
  CHECK_FALSE(low.satisfied);
  CHECK(low.margin == -1.0);
  CHECK(make_report(1.0, 0.9, Side::Upper, 0.2).satisfied);
  CHECK(to_string(Side::Lower) == "lower");
}

TEST_CASE("normalized free energy") {
  const ModelParams p{2, 3, 1, 1.0, 0.5, 1.0, Boundary::Free};
  const double lr = 4.0;
  CHECK(normalized_free_energy(std::pow(p.beta(), -lr / 2.0), p) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(normalized_free_energy(0.0, p), ValidationError);
  CHECK_THROWS_AS(normalized_free_energy(-1.0, p), ValidationError);

  // d = 2 free boundary: Z = z_u^{Lambda_r} exactly.
  for (int n = 1; n <= 2; ++n) {
    const ModelParams q{2, 3, n, 1.0, 1.0, 1.0, Boundary::Free};
    const double zu = z_u(n, q.beta()).real();
    const double f = normalized_free_energy(std::pow(zu, lr), q);
    CHECK(f == doctest::Approx(0.5 * n * n * std::log(q.beta()) + std::log(zu)).epsilon(1e-12));
    const FreeEnergyWindow w = free_energy_window(q, c_upper(n), c_lower(n, 2, 1.0));
    CHECK(w.lower <= f);
    CHECK(f <= w.upper);
  }

  const ModelParams per{2, 2, 1, 1.0, 1.0, 1.0, Boundary::Periodic};
  const FreeEnergyWindow wp = free_energy_window(per, c_upper(1), c_lower(1, 2, 1.0));
  CHECK(wp.lower == doctest::Approx(5.0 * c_lower(1, 2, 1.0)).epsilon(1e-12));
}

TEST_CASE("sourced single-plaquette integral") {
  CHECK(z_u_source(1, 1.0, 0.0).real() == doctest::Approx(z_u(1, 1.0).real()).epsilon(1e-14));
  CHECK(z_u_source(2, 0.7, 0.0).real() == doctest::Approx(z_u(2, 0.7).real()).epsilon(1e-14));
  for (double j : {0.5, 1.0, 2.0}) {
    const double v = z_u_source(1, 1.0, j).real();
    const double oracle_v =
        oracle::integrate([j](double t) { return std::exp(j * std::abs(std::sin(t)) - 2.0 * (1.0 - std::cos(t))); },
                          -kPi, kPi) /
        (2.0 * kPi);
    CHECK(v == doctest::Approx(oracle_v).epsilon(1e-10));
    CHECK(v < z_u_source_bound(1, 1.0, j));
  }
  CHECK(z_u_source(1, 1.0, Complex(0.0, 1.0)).real() == doctest::Approx(z_u_source(1, 1.0, 1.0).real()));
  CHECK(std::exp(c_upper_source(1)) ==
        doctest::Approx(std::pow(kPi, 1.25) * std::sqrt(std::sqrt(2.0 * kPi) / 2.0) / (2.0 * kPi)).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ModelParams({2, 2, 1, 1.0, 2.0, 1.0, Boundary::Free}).validate(), ValidationError);
  CHECK_THROWS_AS(ModelParams({5, 2, 1, 1.0, 1.0, 1.0, Boundary::Free}).validate(), ValidationError);
  CHECK_THROWS_AS(ModelParams({2, 2, 1, 0.0, 1.0, 1.0, Boundary::Free}).validate(), ValidationError);
  CHECK_THROWS_AS(ModelParams({2, 2, 0, 1.0, 1.0, 1.0, Boundary::Free}).validate(), ValidationError);
  CHECK(ModelParams({3, 2, 1, 0.5, 0.25, 1.0, Boundary::Free}).beta() == doctest::Approx(8.0));
  CHECK_THROWS_AS(z_u(1, -1.0), ValidationError);
}
