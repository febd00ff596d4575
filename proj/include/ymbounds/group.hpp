#pragma once

// U(N) numerics: Haar sampling, spectral decomposition, exponential map,
// principal logarithm and Lie-algebra coordinates.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ymb {

using Complex = std::complex<double>;

/// Largest group dimension supported by the matrix types (stack storage).
inline constexpr int kMaxGroupDim = 4;

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                              kMaxGroupDim, kMaxGroupDim>;

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kRoundTripTol = 1e-10;

/// Hilbert-Schmidt norm [Tr(M^dagger M)]^{1/2}.
double hs_norm(const CMatrix& m);

/// ||M^dagger M - 1||_HS.
double unitarity_defect(const CMatrix& m);

/// ||M - M^dagger||_HS.
double hermiticity_defect(const CMatrix& m);

struct Unchecked {};
inline constexpr Unchecked unchecked{};

class UnitaryMatrix {
 public:
  UnitaryMatrix(CMatrix m, Unchecked) : m_(std::move(m)) {}

  /// Validating constructor: throws ValidationError when the defect exceeds tol.
  static UnitaryMatrix from_matrix(CMatrix m, double tol = kUnitaryTol);
  static UnitaryMatrix identity(int n);
  static UnitaryMatrix diagonal(std::span<const double> phases);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex trace() const { return m_.trace(); }
  UnitaryMatrix adjoint() const { return {m_.adjoint(), unchecked}; }

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return {a.m_ * b.m_, unchecked};
  }

 private:
  CMatrix m_;
};

class HermitianMatrix {
 public:
  HermitianMatrix(CMatrix m, Unchecked) : m_(std::move(m)) {}

  static HermitianMatrix from_matrix(CMatrix m, double tol = kUnitaryTol);
  static HermitianMatrix zero(int n);
  static HermitianMatrix diagonal(std::span<const double> values);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  double hs_norm_squared() const { return m_.squaredNorm(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return {a.m_ + b.m_, unchecked};
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return {a.m_ - b.m_, unchecked};
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& x) { return {s * x.m_, unchecked}; }

 private:
  CMatrix m_;
};

/// Angular eigenvalues of a unitary matrix: phases in (-pi, pi], sorted descending.
struct AngularSpectrum {
  std::vector<double> phases;

  double sum_of_squares() const;
};

/// Orthonormal basis of the N x N Hermitian matrices, Tr(theta_a theta_b) = delta_ab.
class LieBasis {
 public:
  /// Diagonal units, then symmetric and antisymmetric off-diagonal pairs.
  static LieBasis standard(int n);

  int dim() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const HermitianMatrix& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<HermitianMatrix>& elements() const { return elements_; }

 private:
  int n_ = 0;
  std::vector<HermitianMatrix> elements_;
};

struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const RngState&, const RngState&) = default;
};

/// Deterministic random stream for a (seed, stream) pair.
class Rng {
 public:
  explicit Rng(RngState state);

  const RngState& state() const { return state_; }
  std::mt19937_64& engine() { return engine_; }

  double normal() { return normal_(engine_); }
  /// Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }

 private:
  RngState state_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Haar-distributed element of U(n): QR of a complex Ginibre matrix with the
/// phases of diag(R) divided out.
UnitaryMatrix haar_sample(int n, Rng& rng);

AngularSpectrum angular_eigenvalues(const UnitaryMatrix& u);

UnitaryMatrix exp_map(const HermitianMatrix& x);

/// X with exp(iX) = U and spectrum in (-pi, pi].
HermitianMatrix principal_log(const UnitaryMatrix& u);

std::vector<double> lie_coords(const HermitianMatrix& x, const LieBasis& basis);
HermitianMatrix from_lie_coords(std::span<const double> coords, const LieBasis& basis);

/// Hermitian matrix with independent Gaussian Lie coordinates of standard deviation `scale`.
HermitianMatrix random_hermitian(int n, Rng& rng, double scale = 1.0);

/// Maps an angle to (-pi, pi], sending -pi to +pi.
double wrap_phase(double phase);

}  // namespace ymb
