#include "ymbounds/partition.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "haar_kernel.hpp"
#include "ymbounds/errors.hpp"
#include "ymbounds/wilson.hpp"

namespace ymb {
namespace {

using Slots = std::array<std::uint32_t, 4>;

struct SamplingPlan {
  int n = 1;
  std::size_t bond_slots = 0;
  std::vector<std::uint32_t> variables;
  std::vector<Slots> plaquettes;
  std::vector<Slots> sources;
};

SamplingPlan make_plan(const Lattice& lattice, int n, BondSampling mode, std::span<const Plaquette> sources) {
  SamplingPlan plan;
  plan.n = n;
  plan.bond_slots = lattice.bond_slots();
  if (mode == BondSampling::GaugeFixed) {
    const GaugeFixing g = enhanced_temporal_gauge(lattice);
    for (const Bond& b : g.retained) plan.variables.push_back(static_cast<std::uint32_t>(lattice.bond_index(b)));
  } else {
    for (const Bond& b : lattice.bonds()) plan.variables.push_back(static_cast<std::uint32_t>(lattice.bond_index(b)));
  }
  plan.plaquettes = PlaquetteTable::build(lattice).slots;
  plan.sources = PlaquetteTable::build(lattice, sources).slots;
  return plan;
}

template <int N>
Complex trace_of(const Slots& s, const std::vector<detail::FixedMatrix<N>>& links) {
  // Tr(A B C^dagger D^dagger) = sum_ij (AB)_ij conj((DC)_ij)
  const detail::FixedMatrix<N> ab = links[s[0]] * links[s[1]];
  const detail::FixedMatrix<N> dc = links[s[3]] * links[s[2]];
  return (ab.array() * dc.array().conjugate()).sum();
}

// Draws `count` configurations and calls visit(action, im_traces) for each,
// where im_traces[j] = Im Tr U_{p_j} for the plan's source plaquettes.
template <int N, class Visit>
void sample_block(const SamplingPlan& plan, RngState state, std::size_t count, Visit&& visit) {
  Rng rng(state);
  std::vector<detail::FixedMatrix<N>> links(plan.bond_slots, detail::FixedMatrix<N>::Identity());
  std::vector<double> im(plan.sources.size());
  for (std::size_t i = 0; i < count; ++i) {
    for (std::uint32_t v : plan.variables) links[v] = detail::haar_fixed<N>(rng);
    double action = 0.0;
    for (const Slots& s : plan.plaquettes) action += 2.0 * (N - trace_of<N>(s, links).real());
    for (std::size_t j = 0; j < plan.sources.size(); ++j) im[j] = trace_of<N>(plan.sources[j], links).imag();
    visit(action, std::span<const double>(im));
  }
}

template <class Visit>
void dispatch_block(const SamplingPlan& plan, RngState state, std::size_t count, Visit&& visit) {
  switch (plan.n) {
    case 1: sample_block<1>(plan, state, count, visit); break;
    case 2: sample_block<2>(plan, state, count, visit); break;
    case 3: sample_block<3>(plan, state, count, visit); break;
    case 4: sample_block<4>(plan, state, count, visit); break;
    default: throw ValidationError("group dimension must lie in [1, 4]");
  }
}

std::size_t block_count(std::size_t samples, std::size_t b) {
  return samples / kBlocks + (b < samples % kBlocks ? 1 : 0);
}

void check_sampler(const SamplerConfig& s) {
  if (s.samples < kMinSamples) {
    throw ValidationError("at least " + std::to_string(kMinSamples) + " samples are required, got " +
                          std::to_string(s.samples));
  }
}

// Runs fn(b) for every block, distributing blocks over worker threads. Results
// must be written to per-block storage; combination happens afterwards in block order.
template <class Fn>
void run_blocks(int workers, Fn&& fn) {
  int w = workers > 0 ? workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  w = std::min<int>(w, static_cast<int>(kBlocks));
  if (w == 1) {
    for (std::size_t b = 0; b < kBlocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      try {
        for (std::size_t b = next++; b < kBlocks; b = next++) fn(b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * o.n / total;
    m2 += o.m2 + delta * delta * n * o.n / total;
    n = total;
  }
};

MCEstimate to_estimate(const Moments& m, RngState seed) {
  MCEstimate e;
  e.mean = m.mean;
  e.n_samples = static_cast<std::size_t>(m.n);
  e.std_error = m.n > 1.0 ? std::sqrt(std::max(0.0, m.m2 / (m.n - 1.0)) / m.n) : 0.0;
  e.seed = seed;
  return e;
}

bool in_lattice(const Lattice& lattice, const Plaquette& p) {
  for (int mu = 0; mu < lattice.dim(); ++mu) {
    const int c = p.origin.x[static_cast<std::size_t>(mu)];
    if (c < 1 || c > lattice.extent()) return false;
  }
  if (!(0 <= p.mu && p.mu < p.nu && p.nu < lattice.dim())) return false;
  if (!lattice.has_bond(p.origin, p.mu) || !lattice.has_bond(p.origin, p.nu)) return false;
  const Plaquette q = lattice.plaquette(p.origin, p.mu, p.nu);
  return q.bonds == p.bonds;
}

}  // namespace

std::vector<MCEstimate> estimate_partition_sweep(const Lattice& lattice, int n, std::span<const double> betas,
                                                 const SamplerConfig& sampler, BondSampling mode) {
  check_sampler(sampler);
  if (betas.empty()) throw ValidationError("estimate_partition_sweep: no couplings given");
  for (double b : betas) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw ValidationError("couplings must be finite and nonnegative");
  }
  if (n < 1 || n > kMaxGroupDim) throw ValidationError("group dimension must lie in [1, 4]");
  const SamplingPlan plan = make_plan(lattice, n, mode, {});
  const std::size_t k = betas.size();
  std::vector<std::vector<Moments>> blocks(kBlocks, std::vector<Moments>(k));
  run_blocks(sampler.workers, [&](std::size_t b) {
    auto& acc = blocks[b];
    dispatch_block(plan, RngState{sampler.rng.seed, sampler.rng.stream * kBlocks + b}, block_count(sampler.samples, b),
                   [&](double action, std::span<const double>) {
                     for (std::size_t i = 0; i < k; ++i) acc[i].add(std::exp(-betas[i] * action));
                   });
  });
  std::vector<MCEstimate> out;
  for (std::size_t i = 0; i < k; ++i) {
    Moments total;
    for (std::size_t b = 0; b < kBlocks; ++b) total.merge(blocks[b][i]);
    out.push_back(to_estimate(total, sampler.rng));
  }
  return out;
}

MCEstimate estimate_partition(const ModelParams& params, const SamplerConfig& sampler, BondSampling mode) {
  params.validate();
  const double beta = params.beta();
  return estimate_partition_sweep(params.lattice(), params.n, std::span<const double>(&beta, 1), sampler, mode)
      .front();
}

double plaquette_field_trace(const UnitaryMatrix& holonomy, double beta) {
  if (!(beta >= 0.0)) throw ValidationError("coupling beta must be nonnegative");
  const Complex tr = holonomy.trace() - static_cast<double>(holonomy.dim());
  return std::sqrt(beta) * tr.imag();
}

void SourceSpec::validate(const Lattice& lattice) const {
  if (plaquettes.empty()) throw ValidationError("source spec needs at least one plaquette");
  if (plaquettes.size() != strengths.size()) throw ValidationError("source spec: one strength per plaquette");
  for (const Plaquette& p : plaquettes) {
    if (!in_lattice(lattice, p)) throw ValidationError("source plaquette does not lie in the lattice");
  }
  for (const Complex& j : strengths) {
    if (!std::isfinite(j.real()) || !std::isfinite(j.imag())) throw ValidationError("source strengths must be finite");
  }
}

PlaquetteFieldSamples PlaquetteFieldSamples::draw(const ModelParams& params, std::span<const Plaquette> sources,
                                                  const SamplerConfig& sampler) {
  params.validate();
  check_sampler(sampler);
  if (params.bc != Boundary::Periodic) throw ValidationError("the generating functional needs periodic boundaries");
  if (params.L % 2 != 0) throw ValidationError("the generating functional needs an even lattice extent");
  const Lattice lattice = params.lattice();
  SourceSpec spec{std::vector<Plaquette>(sources.begin(), sources.end()),
                  std::vector<Complex>(sources.size(), Complex{})};
  spec.validate(lattice);

  const double beta = params.beta();
  const double root_beta = std::sqrt(beta);
  const SamplingPlan plan = make_plan(lattice, params.n, BondSampling::GaugeFixed, sources);
  const std::size_t r = sources.size();
  std::vector<std::vector<double>> w(kBlocks);
  std::vector<std::vector<double>> m(kBlocks);
  run_blocks(sampler.workers, [&](std::size_t b) {
    const std::size_t count = block_count(sampler.samples, b);
    w[b].reserve(count);
    m[b].reserve(count * r);
    dispatch_block(plan, RngState{sampler.rng.seed, sampler.rng.stream * kBlocks + b}, count,
                   [&](double action, std::span<const double> im) {
                     w[b].push_back(std::exp(-beta * action));
                     for (double t : im) m[b].push_back(root_beta * t);
                   });
  });

  PlaquetteFieldSamples out;
  out.r_ = r;
  Moments total;
  for (std::size_t b = 0; b < kBlocks; ++b) {
    Moments block;
    for (double x : w[b]) block.add(x);
    total.merge(block);
    out.weights_.insert(out.weights_.end(), w[b].begin(), w[b].end());
    out.traces_.insert(out.traces_.end(), m[b].begin(), m[b].end());
    out.block_end_.push_back(out.weights_.size());
  }
  out.denominator_ = to_estimate(total, sampler.rng);
  return out;
}

Complex PlaquetteFieldSamples::value(std::span<const Complex> strengths) const {
  if (strengths.size() != r_) throw ValidationError("expected one source strength per plaquette");
  Complex num{};
  double den = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    Complex e{};
    for (std::size_t j = 0; j < r_; ++j) e += strengths[j] * traces_[i * r_ + j];
    num += weights_[i] * std::exp(e);
    den += weights_[i];
  }
  return num / den;
}

GenfunEstimate PlaquetteFieldSamples::evaluate(std::span<const Complex> strengths, double sigma) const {
  if (strengths.size() != r_) throw ValidationError("expected one source strength per plaquette");
  std::vector<Complex> num(block_end_.size());
  std::vector<double> den(block_end_.size());
  std::size_t start = 0;
  for (std::size_t b = 0; b < block_end_.size(); ++b) {
    for (std::size_t i = start; i < block_end_[b]; ++i) {
      Complex e{};
      for (std::size_t j = 0; j < r_; ++j) e += strengths[j] * traces_[i * r_ + j];
      num[b] += weights_[i] * std::exp(e);
      den[b] += weights_[i];
    }
    start = block_end_[b];
  }
  Complex num_total{};
  double den_total = 0.0;
  for (std::size_t b = 0; b < num.size(); ++b) {
    num_total += num[b];
    den_total += den[b];
  }
  GenfunEstimate out;
  out.denominator = denominator_;
  out.denominator_degenerate = !(denominator_.mean > sigma * denominator_.std_error);
  out.value = num_total / den_total;

  const double nb = static_cast<double>(num.size());
  std::vector<Complex> loo(num.size());
  Complex loo_mean{};
  for (std::size_t b = 0; b < num.size(); ++b) {
    loo[b] = (num_total - num[b]) / (den_total - den[b]);
    loo_mean += loo[b];
  }
  loo_mean /= nb;
  double ss = 0.0;
  for (const Complex& v : loo) ss += std::norm(v - loo_mean);
  out.std_error = std::sqrt((nb - 1.0) / nb * ss);
  return out;
}

GenfunEstimate estimate_genfun(const ModelParams& params, const SourceSpec& sources, const SamplerConfig& sampler,
                               double sigma) {
  sources.validate(params.lattice());
  const PlaquetteFieldSamples s = PlaquetteFieldSamples::draw(params, sources.plaquettes, sampler);
  return s.evaluate(sources.strengths, sigma);
}

GenfunBound genfun_bound(const ModelParams& params, std::span<const Complex> strengths,
                         const QuadratureScheme& scheme) {
  params.validate();
  if (strengths.empty()) throw ValidationError("genfun_bound: need at least one source");
  const LatticeCounts c = closed_form_counts(params.d, params.L);
  const double r = static_cast<double>(strengths.size());
  const double two_d = std::ldexp(1.0, params.d);
  const double sites = static_cast<double>(c.sites);
  const double exp_u = two_d * static_cast<double>(c.retained) / (r * sites);
  const double exp_l = two_d * static_cast<double>(c.retained + c.extra_bonds) / (r * sites);
  const double beta = params.beta();

  const QuadratureResult zl = z_l(params.n, params.d, beta, scheme);
  GenfunBound out;
  double log_bound = -r * exp_l * std::log(zl.real());
  out.rel_error = r * exp_l * zl.error / zl.real();
  for (const Complex& j : strengths) {
    const QuadratureResult zu = z_u_source(params.n, beta, r * j, scheme);
    log_bound += exp_u * std::log(std::abs(zu.real()));
    out.rel_error += exp_u * zu.error / std::abs(zu.real());
  }
  out.bound = std::exp(log_bound);
  return out;
}

CauchyEstimate correlation_cauchy(const std::function<Complex(std::span<const Complex>)>& g, int r, double radius,
                                  int points_per_circle) {
  if (r < 1) throw ValidationError("correlation order must be at least 1");
  if (!(radius > 0.0)) throw ValidationError("Cauchy radius must be positive");
  if (points_per_circle < 8) throw ValidationError("at least 8 points per circle are required");
  const std::size_t m = static_cast<std::size_t>(points_per_circle);
  std::vector<Complex> roots(m);
  for (std::size_t k = 0; k < m; ++k) {
    roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
  std::vector<Complex> j(static_cast<std::size_t>(r));
  CauchyEstimate out;
  Complex sum{};
  while (true) {
    Complex inv{1.0, 0.0};
    for (std::size_t k = 0; k < idx.size(); ++k) {
      j[k] = radius * roots[idx[k]];
      inv /= j[k];
    }
    const Complex v = g(j);
    sum += v * inv;
    out.max_abs = std::max(out.max_abs, std::abs(v));
    ++out.evaluations;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == m) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  out.derivative = sum / std::pow(static_cast<double>(m), r);
  out.bound = std::tgamma(r + 1.0) * out.max_abs / std::pow(radius, r);
  return out;
}

}  // namespace ymb
