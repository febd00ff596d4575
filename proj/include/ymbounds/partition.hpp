#pragma once

// Monte Carlo estimation of the lattice partition function, the plaquette-field
// generating functional and the bounds they are checked against.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ymbounds/bounds.hpp"
#include "ymbounds/lattice.hpp"

namespace ymb {

inline constexpr std::size_t kMinSamples = 1000;
/// Samples are split into this many blocks; block b draws from stream b of the seed.
inline constexpr std::size_t kBlocks = 100;

struct SamplerConfig {
  std::size_t samples = 100'000;
  RngState rng{};
  int workers = 1;  ///< <= 0 means one per hardware thread
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< sample standard deviation / sqrt(n)
  std::size_t n_samples = 0;
  RngState seed{};
};

enum class BondSampling {
  GaugeFixed,  ///< enhanced temporal gauge: fixed bonds are the identity
  AllBonds,    ///< every bond Haar-distributed
};

/// Haar expectation of exp(-beta A) with beta = params.beta().
MCEstimate estimate_partition(const ModelParams& params, const SamplerConfig& sampler,
                              BondSampling mode = BondSampling::GaugeFixed);

/// One sample set, reweighted for each coupling in `betas`.
std::vector<MCEstimate> estimate_partition_sweep(const Lattice& lattice, int n, std::span<const double> betas,
                                                 const SamplerConfig& sampler,
                                                 BondSampling mode = BondSampling::GaugeFixed);

/// tr M_p = beta^{1/2} Im Tr(U_p - 1) = beta^{1/2} sum_j sin lambda_j.
double plaquette_field_trace(const UnitaryMatrix& holonomy, double beta);

struct SourceSpec {
  std::vector<Plaquette> plaquettes;
  std::vector<Complex> strengths;

  std::size_t size() const { return plaquettes.size(); }
  /// Throws ValidationError unless r >= 1, sizes agree, plaquettes lie in the lattice and strengths are finite.
  void validate(const Lattice& lattice) const;
};

struct GenfunEstimate {
  Complex value{};
  double std_error = 0.0;  ///< jackknife over the sampling blocks
  MCEstimate denominator;
  bool denominator_degenerate = false;  ///< denominator within `sigma` standard errors of zero
};

/// Weights exp(-beta A) and source traces tr M_{p_j} of one Haar sample set
/// on a periodic lattice, reusable for any source strengths.
class PlaquetteFieldSamples {
 public:
  static PlaquetteFieldSamples draw(const ModelParams& params, std::span<const Plaquette> sources,
                                    const SamplerConfig& sampler);

  std::size_t samples() const { return weights_.size(); }
  std::size_t sources() const { return r_; }
  const MCEstimate& denominator() const { return denominator_; }

  /// G(J) = sum w exp(sum_j J_j m_j) / sum w, with a jackknife error.
  GenfunEstimate evaluate(std::span<const Complex> strengths, double sigma = 3.0) const;
  /// Point value only.
  Complex value(std::span<const Complex> strengths) const;

 private:
  std::size_t r_ = 0;
  std::vector<double> weights_;
  std::vector<double> traces_;  // [sample * r + j]
  std::vector<std::size_t> block_end_;
  MCEstimate denominator_;
};

/// Requires periodic boundaries and even L.
GenfunEstimate estimate_genfun(const ModelParams& params, const SourceSpec& sources, const SamplerConfig& sampler,
                               double sigma = 3.0);

/// prod_j |z_u(r J_j)|^{2^d Lambda_r / (r Lambda_s)} / z_l^{2^d (Lambda_r + Lambda_e) / (r Lambda_s)}.
struct GenfunBound {
  double bound = 0.0;
  double rel_error = 0.0;  ///< propagated quadrature error
};

GenfunBound genfun_bound(const ModelParams& params, std::span<const Complex> strengths,
                         const QuadratureScheme& scheme = {});

struct CauchyEstimate {
  Complex derivative{};  ///< d^r G / dJ_1 ... dJ_r at 0
  double max_abs = 0.0;  ///< max |G| on the polycircle
  double bound = 0.0;    ///< r! max|G| / R^r
  std::size_t evaluations = 0;
};

/// Mixed first derivative at the origin from the Cauchy integral on the
/// polycircle |J_j| = radius, trapezoidal in each angle.
CauchyEstimate correlation_cauchy(const std::function<Complex(std::span<const Complex>)>& g, int r, double radius,
                                  int points_per_circle);

}  // namespace ymb
