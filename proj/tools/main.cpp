// ymbounds: run bound and invariant checks from the command line.
//
// Exit status: 0 all checks pass, 1 at least one check failed, 2 bad usage.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "CLI11.hpp"
#include "ymbounds/bounds.hpp"
#include "ymbounds/errors.hpp"
#include "ymbounds/partition.hpp"
#include "ymbounds/report.hpp"
#include "ymbounds/scalar.hpp"
#include "ymbounds/wilson.hpp"

namespace {

using namespace ymb;

struct Options {
  int d = 2;
  int L = 2;
  int n = 1;
  double a = 1.0;
  double g2 = 1.0;
  std::optional<double> g0;
  std::string bc = "free";
  std::size_t samples = 100'000;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  double sigma = 3.0;
  std::string out;
  std::string format = "csv";
  double mu = 1.0;
  double kappa_u = 1.0;
  int r = 1;
  double j = 0.5;
};

// Section headers only group keys for readability; every key maps to a top-level flag.
class SectionedConfig : public CLI::ConfigINI {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> items = CLI::ConfigINI::from_config(input);
    std::vector<CLI::ConfigItem> flat;
    for (auto& item : items) {
      if (item.name == "++" || item.name == "--") continue;
      item.parents.clear();
      flat.push_back(std::move(item));
    }
    return flat;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ModelParams model(const Options& o) {
  ModelParams p;
  p.d = o.d;
  p.L = o.L;
  p.n = o.n;
  p.a = o.a;
  p.g2 = o.g2;
  p.g0 = o.g0 ? *o.g0 : std::sqrt(o.g2);
  p.bc = boundary_from_string(o.bc);
  p.validate();
  return p;
}

SamplerConfig sampler(const Options& o) {
  if (!o.seed) throw UsageError("--seed is required for stochastic checks");
  return SamplerConfig{o.samples, RngState{*o.seed, 0}, o.workers};
}

std::string describe(const ModelParams& p) {
  std::ostringstream os;
  os << "d=" << p.d << ";L=" << p.L << ";N=" << p.n << ";a=" << format_number(p.a) << ";g2=" << format_number(p.g2)
     << ";g0=" << format_number(p.g0) << ";bc=" << to_string(p.bc) << ";beta=" << format_number(p.beta());
  return os.str();
}

void run_quadratic_bound(const Options& o, Report& rep) {
  const SamplerConfig s = sampler(o);
  if (o.n < 1 || o.n > kMaxGroupDim) throw ValidationError("--N must lie in [1, 4]");
  for (int k = 1; k <= 4; ++k) {
    const QuadraticBoundReport l = verify_quadratic_bound(o.n, k, o.samples, RngState{s.rng.seed, static_cast<std::uint64_t>(k)});
    const double v = static_cast<double>(l.violations);
    rep.add(CheckRow{"quadratic_bound.k" + std::to_string(k), "plaquette quadratic bound",
                     "N=" + std::to_string(o.n) + ";k=" + std::to_string(k) + ";samples=" + std::to_string(o.samples) +
                         ";max_ratio=" + format_number(l.max_ratio),
                     v, 0.0, 0.0, "upper", l.violations == 0 ? 0.0 : -v, l.violations == 0});
  }
}

void run_bounds(const Options& o, Report& rep) {
  const ModelParams p = model(o);
  const SinglePlaquetteBounds b = single_plaquette_bounds(p);
  const std::string desc = describe(p);
  rep.add_bound("bounds.zu_upper", "z_u closed-form upper bound", desc, b.upper);
  rep.add_bound("bounds.zl_lower", "z_l closed-form lower bound", desc, b.lower);
  rep.add_bound("bounds.zl_le_zu", "z_l <= z_u", desc, b.ordering);
  rep.add_bound("bounds.jensen_xi", "Jensen factor xi <= z_u", desc, b.jensen);
  const bool conv = b.zu.converged && b.zl.converged;
  rep.add(CheckRow{"bounds.quadrature", "quadrature convergence", desc,
                   std::max(b.zu.error / b.zu.real(), b.zl.error / b.zl.real()), 0.0, 1e-6, "upper",
                   1e-6 - std::max(b.zu.error / b.zu.real(), b.zl.error / b.zl.real()), conv});
}

void run_partition(const Options& o, Report& rep) {
  const ModelParams p = model(o);
  const SamplerConfig s = sampler(o);
  const MCEstimate z = estimate_partition(p, s);
  const double beta = p.beta();
  const LatticeCounts c = closed_form_counts(p.d, p.L);
  const QuadratureResult zu = z_u(p.n, beta);
  const QuadratureResult zl = z_l(p.n, p.d, beta);
  const double lr = static_cast<double>(c.retained);
  const double low_exp = p.bc == Boundary::Periodic ? static_cast<double>(c.retained + c.extra_bonds) : lr;
  const double upper = std::pow(zu.real(), lr);
  const double lower = std::pow(zl.real(), low_exp);
  const double tol = o.sigma * z.std_error;
  const std::string desc = describe(p) + ";samples=" + std::to_string(z.n_samples) + ";seed=" + std::to_string(*o.seed);
  rep.add_bound("partition.upper", "Z <= z_u^Lr", desc,
                make_report(z.mean, upper, Side::Upper, tol + upper * lr * zu.error / zu.real()), z.std_error);
  rep.add_bound("partition.lower", "Z >= z_l^(Lr[+Le])", desc,
                make_report(z.mean, lower, Side::Lower, tol + lower * low_exp * zl.error / zl.real()), z.std_error);
  if (p.d == 2 && p.bc == Boundary::Free) {
    const double diff = std::abs(z.mean - upper);
    rep.add(CheckRow{"partition.factorization", "Z = z_u^Lr for d=2 free boundaries", desc, z.mean, z.std_error, upper,
                     "equal", tol - diff, diff <= tol});
  }
  if (z.mean > 0.0) {
    const double f = normalized_free_energy(z.mean, p);
    const double f_err = o.sigma * z.std_error / z.mean / lr;
    const FreeEnergyWindow w = free_energy_window(p, c_upper(p.n), c_lower(p.n, p.d, p.g0));
    rep.add_bound("free_energy.upper", "normalized free energy <= c_u", desc, make_report(f, w.upper, Side::Upper, f_err),
                  f_err / o.sigma);
    rep.add_bound("free_energy.lower", "normalized free energy >= lower window", desc,
                  make_report(f, w.lower, Side::Lower, f_err), f_err / o.sigma);
  }
}

void run_genfun(const Options& o, Report& rep) {
  const ModelParams p = model(o);
  const SamplerConfig s = sampler(o);
  if (p.bc != Boundary::Periodic || p.L % 2 != 0) throw ValidationError("genfun needs --bc periodic and even --L");
  if (o.r < 1) throw ValidationError("--r must be at least 1");
  const Lattice lat = p.lattice();
  std::vector<Plaquette> plaqs;
  for (int j = 0; j < o.r; ++j) {
    Site x;
    for (int mu = 0; mu < p.d; ++mu) x.x[static_cast<std::size_t>(mu)] = 1;
    x.x[0] = 1 + j % p.L;
    x.x[1] = 1 + (j / p.L) % p.L;
    plaqs.push_back(lat.plaquette(x, 0, 1));
  }
  const PlaquetteFieldSamples samples = PlaquetteFieldSamples::draw(p, plaqs, s);
  const std::string desc = describe(p) + ";r=" + std::to_string(o.r) + ";J=" + format_number(o.j) +
                           ";samples=" + std::to_string(o.samples) + ";seed=" + std::to_string(*o.seed);

  const std::vector<Complex> zero(static_cast<std::size_t>(o.r), Complex{});
  const Complex g0 = samples.value(zero);
  rep.add(CheckRow{"genfun.normalization", "G(0) = 1", desc, g0.real(), 0.0, 1.0, "equal", -std::abs(g0 - 1.0),
                   g0 == Complex(1.0, 0.0)});

  const std::vector<Complex> js(static_cast<std::size_t>(o.r), Complex(o.j, 0.0));
  const GenfunEstimate g = samples.evaluate(js, o.sigma);
  const GenfunBound gb = genfun_bound(p, js);
  BoundReport br = make_report(std::abs(g.value), gb.bound, Side::Upper, o.sigma * g.std_error + gb.bound * gb.rel_error);
  br.satisfied = br.satisfied && !g.denominator_degenerate;
  rep.add_bound("genfun.product_bound", "|G| <= product of z_u(rJ) over z_l powers", desc, br, g.std_error);

  const double beta = p.beta();
  for (double jj : {o.j, o.r * o.j}) {
    const QuadratureResult zj = z_u_source(p.n, beta, Complex(jj, 0.0));
    const double bound = z_u_source_bound(p.n, beta, Complex(jj, 0.0));
    rep.add_bound("genfun.zu_source", "z_u(J) closed-form bound",
                  describe(p) + ";J=" + format_number(jj), make_report(zj.real(), bound, Side::Upper, zj.error));
  }
}

void run_scalar(const Options& o, Report& rep) {
  ScalarFieldParams sp{o.d, o.a, o.mu, o.kappa_u};
  sp.validate();
  std::ostringstream ds;
  ds << "d=" << sp.d << ";a=" << format_number(sp.a) << ";m_u=" << format_number(sp.m_u)
     << ";kappa_u=" << format_number(sp.kappa_u);
  const std::string desc = ds.str();
  const double s2 = sp.scale_factor_squared();

  const std::vector<LatticeSeparation> seps{{{0, 0, 0, 0}}, {{1, 0, 0, 0}}, {{2, 1, 0, 0}}, {{3, 2, 1, 0}}};
  for (const auto& sep : seps) {
    if (sp.m_u == 0.0 && sp.d == 2) break;
    const double cs = propagator_scaled(sp, sep);
    const double cu = propagator_unscaled(sp, sep);
    const double dev = std::abs(cs - s2 * cu) / cs;
    std::ostringstream sid;
    sid << desc << ";n=" << sep.n[0] << "/" << sep.n[1] << "/" << sep.n[2] << "/" << sep.n[3];
    rep.add(CheckRow{"scalar.scaling", "C_a = s^2 C^u_a", sid.str(), cs, 0.0, s2 * cu, "equal", 1e-10 - dev,
                     dev <= 1e-10});
  }

  if (sp.m_u > 0.0) {
    const double m = particle_mass(sp);
    auto f = [&](double x) { return dispersion_residual(sp, x); };
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(f, 0.0, 2.0 * m + 1.0, boost::math::tools::eps_tolerance<double>(50), iters);
    const double mr = 0.5 * (root.first + root.second);
    const double dev = std::abs(m - mr);
    rep.add(CheckRow{"scalar.mass_root", "closed-form mass solves the dispersion relation", desc, m, 0.0, mr, "equal",
                     1e-10 - dev, dev <= 1e-10});
    const DecayFit fit = fit_decay_rate(sp, 8, 16);
    const double fdev = std::abs(fit.rate - m);
    rep.add(CheckRow{"scalar.decay_rate", "time-slice decay rate equals the mass", desc, fit.rate, 0.0, m, "equal",
                     1e-8 * m - fdev, fdev <= 1e-8 * m});
  }

  if (sp.d == 3 || sp.d == 4) {
    const double c0 = coincident_constant(sp.d);
    const double c = propagator_scaled(sp, LatticeSeparation{});
    rep.add_bound("scalar.coincident_le_c0", "scaled coincident value <= C_0", desc,
                  make_report(c, c0, Side::Upper, 1e-12 * c0));
    // Three sources on a line, covariance from the scaled propagator.
    const std::vector<double> k{0.3, -0.2, 0.5};
    Eigen::MatrixXd cov(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        LatticeSeparation sep;
        sep.n[0] = i - j;
        cov(i, j) = propagator_scaled(sp, sep);
      }
    }
    const double gval = gaussian_genfun(cov, k);
    const double gbound = gaussian_genfun_bound(c0, k);
    rep.add_bound("scalar.gaussian_genfun", "Gaussian generating functional <= exp(C_0 r sum J^2)", desc,
                  make_report(gval, gbound, Side::Upper, 1e-12 * gbound));
  }
}

int run(const std::string& command, const Options& o) {
  Report rep;
  if (command == "verify-lemma1" || command == "all") run_quadratic_bound(o, rep);
  if (command == "bounds" || command == "all") run_bounds(o, rep);
  if (command == "partition" || command == "all") run_partition(o, rep);
  if (command == "genfun" || command == "all") {
    Options g = o;
    if (command == "all") {
      g.bc = "periodic";
      g.L += g.L % 2;
    }
    run_genfun(g, rep);
  }
  if (command == "scalar" || command == "all") run_scalar(o, rep);

  const std::string text = rep.render(report_format_from_string(o.format));
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot open output file '" + o.out + "'");
    f << text;
  }
  if (!rep.all_pass()) {
    std::cerr << "failing checks:\n" << kCsvHeader << "\n";
    Report failed;
    for (const auto& row : rep.failures()) failed.add(row);
    const std::string csv = failed.to_csv();
    std::cerr << csv.substr(csv.find('\n') + 1);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice Yang-Mills stability bound checks"};
  app.set_config("--config", "", "key = value configuration file, optional [sections]; flags override it");
  app.config_formatter(std::make_shared<SectionedConfig>());
  Options o;
  app.add_option("--d", o.d, "lattice dimension (2, 3, 4)");
  app.add_option("--L", o.L, "sites per side");
  app.add_option("--N", o.n, "gauge group U(N)");
  app.add_option("--a", o.a, "lattice spacing in (0, 1]");
  app.add_option("--g2", o.g2, "coupling g^2");
  app.add_option("--g0", o.g0, "maximal coupling g0 (default sqrt(g2))");
  app.add_option("--bc", o.bc, "boundary condition")->check(CLI::IsMember({"free", "periodic"}));
  app.add_option("--samples", o.samples, "Monte Carlo sample count");
  app.add_option("--seed", o.seed, "random seed (required for stochastic checks)");
  app.add_option("--workers", o.workers, "sampling threads (results do not depend on it)");
  app.add_option("--sigma", o.sigma, "standard errors allowed in stochastic verdicts");
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--format", o.format, "csv or structured-text")->check(CLI::IsMember({"csv", "structured-text"}));
  app.add_option("--mu", o.mu, "unscaled scalar mass m_u");
  app.add_option("--kappa-u", o.kappa_u, "unscaled hopping parameter");
  app.add_option("--r", o.r, "number of source plaquettes");
  app.add_option("--J", o.j, "source strength");

  std::string command;
  for (const char* name : {"verify-lemma1", "bounds", "partition", "genfun", "scalar", "all"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&command, name] { command = name; });
  }
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run(command, o);
  } catch (const std::exception& e) {
    // UsageError, ValidationError and DivergenceError all mean the request cannot be run.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
