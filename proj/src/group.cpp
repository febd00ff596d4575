#include "ymbounds/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "haar_kernel.hpp"
#include "ymbounds/errors.hpp"

namespace ymb {
namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxGroupDim) {
    throw ValidationError("group dimension must lie in [1, " + std::to_string(kMaxGroupDim) +
                          "], got " + std::to_string(n));
  }
}

struct SchurSpectrum {
  CMatrix vectors;
  std::vector<double> phases;
};

// A unitary matrix is normal, so its complex Schur form is diagonal up to
// rounding and the Schur vectors are eigenvectors even for degenerate spectra.
SchurSpectrum schur_spectrum(const CMatrix& u) {
  Eigen::ComplexSchur<CMatrix> schur(u);
  SchurSpectrum out{schur.matrixU(), {}};
  const auto& t = schur.matrixT();
  out.phases.resize(static_cast<std::size_t>(u.rows()));
  for (Eigen::Index j = 0; j < u.rows(); ++j) {
    out.phases[static_cast<std::size_t>(j)] = wrap_phase(std::arg(t(j, j)));
  }
  return out;
}

}  // namespace

double wrap_phase(double phase) {
  constexpr double pi = std::numbers::pi;
  double p = std::remainder(phase, 2.0 * pi);
  if (p <= -pi) p += 2.0 * pi;
  return p;
}

double hs_norm(const CMatrix& m) { return m.norm(); }

double unitarity_defect(const CMatrix& m) {
  return (m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())).norm();
}

double hermiticity_defect(const CMatrix& m) { return (m - m.adjoint()).norm(); }

UnitaryMatrix UnitaryMatrix::from_matrix(CMatrix m, double tol) {
  if (m.rows() != m.cols()) throw ValidationError("unitary matrix must be square");
  check_dim(static_cast<int>(m.rows()));
  if (!m.allFinite()) throw ValidationError("unitary matrix has non-finite entries");
  const double defect = unitarity_defect(m);
  if (defect > tol) {
    throw ValidationError("matrix is not unitary: ||U^dagger U - 1||_HS = " + std::to_string(defect));
  }
  return {std::move(m), unchecked};
}

UnitaryMatrix UnitaryMatrix::identity(int n) {
  check_dim(n);
  return {CMatrix::Identity(n, n), unchecked};
}

UnitaryMatrix UnitaryMatrix::diagonal(std::span<const double> phases) {
  const int n = static_cast<int>(phases.size());
  check_dim(n);
  CMatrix m = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = std::polar(1.0, phases[static_cast<std::size_t>(j)]);
  return {std::move(m), unchecked};
}

HermitianMatrix HermitianMatrix::from_matrix(CMatrix m, double tol) {
  if (m.rows() != m.cols()) throw ValidationError("Hermitian matrix must be square");
  check_dim(static_cast<int>(m.rows()));
  if (!m.allFinite()) throw ValidationError("Hermitian matrix has non-finite entries");
  const double defect = hermiticity_defect(m);
  if (defect > tol) {
    throw ValidationError("matrix is not Hermitian: ||X - X^dagger||_HS = " + std::to_string(defect));
  }
  return {std::move(m), unchecked};
}

HermitianMatrix HermitianMatrix::zero(int n) {
  check_dim(n);
  return {CMatrix::Zero(n, n), unchecked};
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  check_dim(n);
  CMatrix m = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = values[static_cast<std::size_t>(j)];
  return {std::move(m), unchecked};
}

double AngularSpectrum::sum_of_squares() const {
  double s = 0.0;
  for (double p : phases) s += p * p;
  return s;
}

LieBasis LieBasis::standard(int n) {
  check_dim(n);
  LieBasis basis;
  basis.n_ = n;
  basis.elements_.reserve(static_cast<std::size_t>(n * n));
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    CMatrix m = CMatrix::Zero(n, n);
    m(j, j) = 1.0;
    basis.elements_.emplace_back(std::move(m), unchecked);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      CMatrix sym = CMatrix::Zero(n, n);
      sym(j, k) = r;
      sym(k, j) = r;
      basis.elements_.emplace_back(std::move(sym), unchecked);
      CMatrix anti = CMatrix::Zero(n, n);
      anti(j, k) = Complex(0.0, -r);
      anti(k, j) = Complex(0.0, r);
      basis.elements_.emplace_back(std::move(anti), unchecked);
    }
  }
  return basis;
}

Rng::Rng(RngState state) : state_(state) {
  std::seed_seq seq{static_cast<std::uint32_t>(state.seed), static_cast<std::uint32_t>(state.seed >> 32),
                    static_cast<std::uint32_t>(state.stream),
                    static_cast<std::uint32_t>(state.stream >> 32), 0x9e3779b9u};
  engine_.seed(seq);
}

UnitaryMatrix haar_sample(int n, Rng& rng) {
  check_dim(n);
  switch (n) {
    case 1: return {CMatrix(detail::haar_fixed<1>(rng)), unchecked};
    case 2: return {CMatrix(detail::haar_fixed<2>(rng)), unchecked};
    case 3: return {CMatrix(detail::haar_fixed<3>(rng)), unchecked};
    default: return {CMatrix(detail::haar_fixed<4>(rng)), unchecked};
  }
}

AngularSpectrum angular_eigenvalues(const UnitaryMatrix& u) {
  const double defect = unitarity_defect(u.matrix());
  if (defect > kRoundTripTol) {
    throw ValidationError("angular_eigenvalues: input deviates from unitarity by " + std::to_string(defect));
  }
  AngularSpectrum spec{schur_spectrum(u.matrix()).phases};
  std::sort(spec.phases.begin(), spec.phases.end(), std::greater<>());
  return spec;
}

UnitaryMatrix exp_map(const HermitianMatrix& x) {
  const int n = x.dim();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(x.matrix());
  const CMatrix& v = eig.eigenvectors();
  CMatrix d = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) d(j, j) = std::polar(1.0, eig.eigenvalues()(j));
  return {v * d * v.adjoint(), unchecked};
}

HermitianMatrix principal_log(const UnitaryMatrix& u) {
  const double defect = unitarity_defect(u.matrix());
  if (defect > kRoundTripTol) {
    throw ValidationError("principal_log: input deviates from unitarity by " + std::to_string(defect));
  }
  const int n = u.dim();
  const SchurSpectrum s = schur_spectrum(u.matrix());
  CMatrix d = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) d(j, j) = s.phases[static_cast<std::size_t>(j)];
  CMatrix x = s.vectors * d * s.vectors.adjoint();
  CMatrix herm = 0.5 * (x + x.adjoint());
  return {std::move(herm), unchecked};
}

std::vector<double> lie_coords(const HermitianMatrix& x, const LieBasis& basis) {
  if (x.dim() != basis.dim()) {
    throw ValidationError("lie_coords: matrix dimension " + std::to_string(x.dim()) +
                          " does not match basis dimension " + std::to_string(basis.dim()));
  }
  std::vector<double> coords;
  coords.reserve(basis.size());
  for (const auto& theta : basis.elements()) {
    coords.push_back((x.matrix() * theta.matrix()).trace().real());
  }
  return coords;
}

HermitianMatrix from_lie_coords(std::span<const double> coords, const LieBasis& basis) {
  if (coords.size() != basis.size()) {
    throw ValidationError("from_lie_coords: expected " + std::to_string(basis.size()) + " coordinates");
  }
  CMatrix m = CMatrix::Zero(basis.dim(), basis.dim());
  for (std::size_t a = 0; a < coords.size(); ++a) m += coords[a] * basis[a].matrix();
  return {std::move(m), unchecked};
}

HermitianMatrix random_hermitian(int n, Rng& rng, double scale) {
  const LieBasis basis = LieBasis::standard(n);
  std::vector<double> coords(basis.size());
  for (double& c : coords) c = scale * rng.normal();
  return from_lie_coords(coords, basis);
}

}  // namespace ymb
