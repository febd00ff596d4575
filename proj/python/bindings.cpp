#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ymbounds/bounds.hpp"
#include "ymbounds/errors.hpp"
#include "ymbounds/partition.hpp"
#include "ymbounds/scalar.hpp"
#include "ymbounds/wilson.hpp"

namespace py = pybind11;
using namespace ymb;

namespace {

ModelParams model(int d, int L, int n, double a, double g2, double g0, const std::string& bc) {
  ModelParams p{d, L, n, a, g2, g0, boundary_from_string(bc)};
  p.validate();
  return p;
}

py::dict quadrature(const QuadratureResult& q) {
  py::dict out;
  out["value"] = q.real();
  out["error"] = q.error;
  out["converged"] = q.converged;
  return out;
}

py::dict bound(const BoundReport& b) {
  py::dict out;
  out["value"] = b.value;
  out["bound"] = b.bound;
  out["side"] = to_string(b.side);
  out["margin"] = b.margin;
  out["satisfied"] = b.satisfied;
  return out;
}

LatticeSeparation separation(const std::vector<int>& n) {
  if (n.size() > static_cast<std::size_t>(kMaxDim)) throw ValidationError("separation has more than 4 components");
  LatticeSeparation s;
  for (std::size_t i = 0; i < n.size(); ++i) s.n[i] = n[i];
  return s;
}

ScalarFieldParams scalar(int d, double a, double m_u, double kappa_u) {
  ScalarFieldParams p{d, a, m_u, kappa_u};
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattice Yang-Mills stability bounds";
  // ValidationError derives from std::invalid_argument and surfaces as ValueError.
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);

  m.def(
      "haar_sample",
      [](int n, std::uint64_t seed, std::uint64_t stream) {
        Rng rng(RngState{seed, stream});
        return Eigen::MatrixXcd(haar_sample(n, rng).matrix());
      },
      py::arg("n"), py::arg("seed"), py::arg("stream") = 0, "Haar-random U(n) matrix for a (seed, stream) pair.");

  m.def(
      "angular_eigenvalues",
      [](const Eigen::MatrixXcd& u) {
        if (u.rows() > kMaxGroupDim || u.rows() != u.cols()) throw ValidationError("expected a square matrix, n <= 4");
        return angular_eigenvalues(UnitaryMatrix::from_matrix(CMatrix(u))).phases;
      },
      py::arg("u"), "Eigenvalue phases in (-pi, pi], descending.");

  m.def(
      "lattice_counts",
      [](int d, int L) {
        const LatticeCounts c = counts(Lattice(d, L, 1.0, Boundary::Free));
        py::dict out;
        out["sites"] = c.sites;
        out["bonds"] = c.free_bonds;
        out["extra_bonds"] = c.extra_bonds;
        out["periodic_bonds"] = c.periodic_bonds;
        out["plaquettes"] = c.plaquettes;
        out["periodic_plaquettes"] = c.periodic_plaquettes;
        out["retained"] = c.retained;
        return out;
      },
      py::arg("d"), py::arg("L"));

  m.def("z_u", [](int n, double beta) { return quadrature(z_u(n, beta, QuadratureScheme::for_group(n))); },
        py::arg("n"), py::arg("beta"));
  m.def("z_l", [](int n, int d, double beta) { return quadrature(z_l(n, d, beta, QuadratureScheme::for_group(n))); },
        py::arg("n"), py::arg("d"), py::arg("beta"));
  m.def(
      "z_u_source",
      [](int n, double beta, Complex j) { return quadrature(z_u_source(n, beta, j, QuadratureScheme::for_group(n))); },
      py::arg("n"), py::arg("beta"), py::arg("j"));
  m.def("c_upper", &c_upper, py::arg("n"));
  m.def(
      "c_lower", [](int n, int d, double g0) { return c_lower(n, d, g0); }, py::arg("n"), py::arg("d"), py::arg("g0"));
  m.def("c_upper_source", &c_upper_source, py::arg("n"));
  m.def("jensen_xi", &jensen_xi, py::arg("n"), py::arg("beta"));

  m.def(
      "single_plaquette_bounds",
      [](int d, int n, double a, double g2, double g0) {
        const SinglePlaquetteBounds b =
            single_plaquette_bounds(model(d, 2, n, a, g2, g0, "free"), QuadratureScheme::for_group(n));
        py::dict out;
        out["beta"] = b.beta;
        out["c_u"] = b.c_u;
        out["c_l"] = b.c_l;
        out["xi"] = b.xi;
        out["upper"] = bound(b.upper);
        out["lower"] = bound(b.lower);
        out["ordering"] = bound(b.ordering);
        out["jensen"] = bound(b.jensen);
        return out;
      },
      py::arg("d"), py::arg("n"), py::arg("a") = 1.0, py::arg("g2") = 1.0, py::arg("g0") = 1.0);

  m.def(
      "estimate_partition",
      [](int d, int L, int n, double a, double g2, double g0, const std::string& bc, std::size_t samples,
         std::uint64_t seed, int workers, bool all_bonds) {
        MCEstimate e;
        {
          py::gil_scoped_release release;
          e = estimate_partition(model(d, L, n, a, g2, g0, bc), SamplerConfig{samples, RngState{seed, 0}, workers},
                                 all_bonds ? BondSampling::AllBonds : BondSampling::GaugeFixed);
        }
        return py::make_tuple(e.mean, e.std_error);
      },
      py::arg("d"), py::arg("L"), py::arg("n"), py::arg("a") = 1.0, py::arg("g2") = 1.0, py::arg("g0") = 1.0,
      py::arg("bc") = "free", py::arg("samples") = 100000, py::arg("seed") = 0, py::arg("workers") = 1,
      py::arg("all_bonds") = false, "Monte Carlo partition function; returns (mean, std_error).");

  m.def(
      "verify_quadratic_bound",
      [](int n, int k, std::size_t samples, std::uint64_t seed) {
        const QuadraticBoundReport r = verify_quadratic_bound(n, k, samples, RngState{seed, 0});
        py::dict out;
        out["samples"] = r.samples;
        out["violations"] = r.violations;
        out["max_ratio"] = r.max_ratio;
        return out;
      },
      py::arg("n"), py::arg("k"), py::arg("samples"), py::arg("seed"));

  m.def(
      "propagator_scaled",
      [](int d, double a, double m_u, double kappa_u, const std::vector<int>& sep) {
        return propagator_scaled(scalar(d, a, m_u, kappa_u), separation(sep));
      },
      py::arg("d"), py::arg("a"), py::arg("m_u"), py::arg("kappa_u"), py::arg("sep"));
  m.def(
      "propagator_unscaled",
      [](int d, double a, double m_u, double kappa_u, const std::vector<int>& sep) {
        return propagator_unscaled(scalar(d, a, m_u, kappa_u), separation(sep));
      },
      py::arg("d"), py::arg("a"), py::arg("m_u"), py::arg("kappa_u"), py::arg("sep"));
  m.def(
      "particle_mass", [](int d, double a, double m_u, double kappa_u) { return particle_mass(scalar(d, a, m_u, kappa_u)); },
      py::arg("d"), py::arg("a"), py::arg("m_u"), py::arg("kappa_u"));
  m.def(
      "coincident_constant", [](int d) { return coincident_constant(d); }, py::arg("d"));
}
