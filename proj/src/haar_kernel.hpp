#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "ymbounds/group.hpp"

namespace ymb::detail {

template <int N>
using FixedMatrix = Eigen::Matrix<Complex, N, N>;

// Ginibre QR with the phases of diag(R) divided out. Shared by haar_sample and
// the Monte Carlo kernels so both consume the random stream identically.
template <int N>
FixedMatrix<N> haar_fixed(Rng& rng) {
  const double s = 1.0 / std::sqrt(2.0);
  FixedMatrix<N> z;
  for (int c = 0; c < N; ++c) {
    for (int r = 0; r < N; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(r, c) = Complex(s * re, s * im);
    }
  }
  if constexpr (N == 1) {
    const double mag = std::abs(z(0, 0));
    z(0, 0) = mag > 0.0 ? z(0, 0) / mag : Complex(1.0, 0.0);
    return z;
  } else {
    Eigen::HouseholderQR<FixedMatrix<N>> qr(z);
    FixedMatrix<N> q = qr.householderQ();
    const auto& packed = qr.matrixQR();
    for (int j = 0; j < N; ++j) {
      const Complex rjj = packed(j, j);
      const double mag = std::abs(rjj);
      q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    }
    return q;
  }
}

}  // namespace ymb::detail
