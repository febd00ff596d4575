#include "ymbounds/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include <boost/pending/disjoint_sets.hpp>

#include "ymbounds/errors.hpp"

namespace ymb {
namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class SiteForest {
 public:
  explicit SiteForest(std::size_t n) : rank_(n), parent_(n), sets_(rank_.data(), parent_.data()) {
    for (std::size_t i = 0; i < n; ++i) sets_.make_set(i);
  }
  std::size_t find(std::size_t i) { return sets_.find_set(i); }
  void join(std::size_t a, std::size_t b) { sets_.union_set(a, b); }
  std::size_t components(std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (find(i) == i) ? 1 : 0;
    return c;
  }

 private:
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> parent_;
  boost::disjoint_sets<std::size_t*, std::size_t*> sets_;
};

}  // namespace

std::string to_string(Boundary bc) { return bc == Boundary::Free ? "free" : "periodic"; }

Boundary boundary_from_string(std::string_view text) {
  if (text == "free") return Boundary::Free;
  if (text == "periodic") return Boundary::Periodic;
  throw ValidationError("boundary condition must be 'free' or 'periodic', got '" + std::string(text) + "'");
}

Lattice::Lattice(int d, int L, double a, Boundary bc) : d_(d), L_(L), a_(a), bc_(bc), num_sites_(0) {
  if (d < 2 || d > kMaxDim) throw ValidationError("lattice dimension must be 2, 3 or 4");
  if (L < 2) throw ValidationError("lattice extent L must be at least 2");
  if (!(a > 0.0 && a <= 1.0)) throw ValidationError("lattice spacing must lie in (0, 1]");
  num_sites_ = static_cast<std::size_t>(ipow(L, d));
}

std::size_t Lattice::site_index(const Site& s) const {
  std::size_t idx = 0;
  for (int mu = d_ - 1; mu >= 0; --mu) {
    const int c = s.x[static_cast<std::size_t>(mu)];
    if (c < 1 || c > L_) throw ValidationError("site coordinate out of range 1..L");
    idx = idx * static_cast<std::size_t>(L_) + static_cast<std::size_t>(c - 1);
  }
  return idx;
}

Site Lattice::site(std::size_t index) const {
  Site s;
  for (int mu = 0; mu < d_; ++mu) {
    s.x[static_cast<std::size_t>(mu)] = static_cast<int>(index % static_cast<std::size_t>(L_)) + 1;
    index /= static_cast<std::size_t>(L_);
  }
  return s;
}

Bond Lattice::bond_at(std::size_t slot) const {
  const Site origin = site(slot / static_cast<std::size_t>(d_));
  const int mu = static_cast<int>(slot % static_cast<std::size_t>(d_));
  return Bond{origin, mu, origin.x[static_cast<std::size_t>(mu)] == L_};
}

bool Lattice::has_bond(const Site& origin, int mu) const {
  if (mu < 0 || mu >= d_) return false;
  return bc_ == Boundary::Periodic || origin.x[static_cast<std::size_t>(mu)] < L_;
}

Bond Lattice::bond(const Site& origin, int mu) const {
  if (!has_bond(origin, mu)) throw ValidationError("bond does not exist on this lattice");
  return Bond{origin, mu, origin.x[static_cast<std::size_t>(mu)] == L_};
}

Site Lattice::shifted(const Site& s, int mu) const {
  Site t = s;
  int& c = t.x[static_cast<std::size_t>(mu)];
  c += 1;
  if (bc_ == Boundary::Periodic && c > L_) c = 1;
  return t;
}

Site Lattice::terminal(const Bond& b) const {
  Site t = b.origin;
  int& c = t.x[static_cast<std::size_t>(b.direction)];
  c = b.wraps ? 1 : c + 1;
  return t;
}

std::vector<Bond> Lattice::bonds() const {
  std::vector<Bond> out;
  std::vector<Bond> wrapping;
  for (std::size_t slot = 0; slot < bond_slots(); ++slot) {
    const Bond b = bond_at(slot);
    if (!b.wraps) {
      out.push_back(b);
    } else if (bc_ == Boundary::Periodic) {
      wrapping.push_back(b);
    }
  }
  out.insert(out.end(), wrapping.begin(), wrapping.end());
  return out;
}

Plaquette Lattice::plaquette(const Site& origin, int mu, int nu) const {
  if (!(0 <= mu && mu < nu && nu < d_)) throw ValidationError("plaquette plane requires 0 <= mu < nu < d");
  if (!has_bond(origin, mu) || !has_bond(origin, nu)) {
    throw ValidationError("plaquette does not fit on this lattice");
  }
  Plaquette p;
  p.origin = origin;
  p.mu = mu;
  p.nu = nu;
  p.bonds = {bond(origin, mu), bond(shifted(origin, mu), nu), bond(shifted(origin, nu), mu), bond(origin, nu)};
  return p;
}

std::vector<Plaquette> Lattice::plaquettes() const {
  std::vector<Plaquette> out;
  for (std::size_t i = 0; i < num_sites_; ++i) {
    const Site s = site(i);
    for (int mu = 0; mu < d_; ++mu) {
      for (int nu = mu + 1; nu < d_; ++nu) {
        if (has_bond(s, mu) && has_bond(s, nu)) out.push_back(plaquette(s, mu, nu));
      }
    }
  }
  return out;
}

LatticeCounts counts(const Lattice& lattice) {
  const Lattice free_lat(lattice.dim(), lattice.extent(), lattice.spacing(), Boundary::Free);
  const Lattice per_lat(lattice.dim(), lattice.extent(), lattice.spacing(), Boundary::Periodic);
  LatticeCounts c;
  c.sites = static_cast<std::int64_t>(lattice.num_sites());
  c.free_bonds = static_cast<std::int64_t>(free_lat.bonds().size());
  c.periodic_bonds = static_cast<std::int64_t>(per_lat.bonds().size());
  c.extra_bonds = c.periodic_bonds - c.free_bonds;
  c.plaquettes = static_cast<std::int64_t>(free_lat.plaquettes().size());
  c.periodic_plaquettes = static_cast<std::int64_t>(per_lat.plaquettes().size());
  const GaugeFixing g = enhanced_temporal_gauge(free_lat);
  c.retained = static_cast<std::int64_t>(g.retained.size());
  return c;
}

LatticeCounts closed_form_counts(int d, int L) {
  if (d < 2 || d > kMaxDim || L < 2) throw ValidationError("closed_form_counts: need d in {2,3,4}, L >= 2");
  const std::int64_t l = L;
  LatticeCounts c;
  c.sites = ipow(l, d);
  c.free_bonds = d * (l - 1) * ipow(l, d - 1);
  c.extra_bonds = d * ipow(l, d - 1);
  c.periodic_bonds = c.free_bonds + c.extra_bonds;
  const std::int64_t planes = d * (d - 1) / 2;
  c.plaquettes = planes * (l - 1) * (l - 1) * ipow(l, d - 2);
  c.periodic_plaquettes = planes * ipow(l, d);
  switch (d) {
    case 2: c.retained = (l - 1) * (l - 1); break;
    case 3: c.retained = (2 * l + 1) * (l - 1) * (l - 1); break;
    default: c.retained = (3 * l * l * l - l * l - l - 1) * (l - 1); break;
  }
  return c;
}

GaugeFixing enhanced_temporal_gauge(const Lattice& lattice) {
  GaugeFixing g;
  g.fixed_mask.assign(lattice.bond_slots(), false);
  for (const Bond& b : lattice.bonds()) {
    bool fixed = false;
    if (!b.wraps) {
      // b^mu is gauged when every coordinate below mu equals 1 (mu = 0: all temporal bonds).
      fixed = true;
      for (int nu = 0; nu < b.direction; ++nu) {
        if (b.origin.x[static_cast<std::size_t>(nu)] != 1) {
          fixed = false;
          break;
        }
      }
    }
    if (fixed) {
      g.fixed.push_back(b);
      g.fixed_mask[lattice.bond_index(b)] = true;
    } else {
      g.retained.push_back(b);
    }
  }
  return g;
}

TreeCheck check_tree(const Lattice& lattice, std::span<const Bond> edges) {
  const std::size_t n = lattice.num_sites();
  SiteForest forest(n);
  TreeCheck out;
  out.acyclic = true;
  for (const Bond& b : edges) {
    const std::size_t u = forest.find(lattice.site_index(b.origin));
    const std::size_t v = forest.find(lattice.site_index(lattice.terminal(b)));
    if (u == v) {
      out.acyclic = false;
    } else {
      forest.join(u, v);
    }
  }
  out.components = forest.components(n);
  out.spanning = out.components == 1;
  return out;
}

bool closes_loop(const Lattice& lattice, std::span<const Bond> edges, const Bond& extra) {
  SiteForest forest(lattice.num_sites());
  for (const Bond& b : edges) {
    forest.join(forest.find(lattice.site_index(b.origin)), forest.find(lattice.site_index(lattice.terminal(b))));
  }
  return forest.find(lattice.site_index(extra.origin)) == forest.find(lattice.site_index(lattice.terminal(extra)));
}

std::string to_text(const Lattice& lattice) {
  std::ostringstream os;
  os.precision(17);
  os << "d = " << lattice.dim() << "\n"
     << "L = " << lattice.extent() << "\n"
     << "a = " << lattice.spacing() << "\n"
     << "bc = " << to_string(lattice.boundary()) << "\n";
  return os.str();
}

Lattice lattice_from_text(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#' || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ValidationError("lattice text: expected 'key = value', got '" + std::string(line) + "'");
    const std::string key(trim(line.substr(0, eq)));
    if (key != "d" && key != "L" && key != "a" && key != "bc") {
      throw ValidationError("lattice text: unknown key '" + key + "'");
    }
    kv[key] = std::string(trim(line.substr(eq + 1)));
  }
  for (const char* key : {"d", "L", "a", "bc"}) {
    if (!kv.contains(key)) throw ValidationError(std::string("lattice text: missing key '") + key + "'");
  }
  auto to_int = [](const std::string& s) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ValidationError("lattice text: bad integer '" + s + "'");
    return v;
  };
  double a = 0.0;
  try {
    std::size_t used = 0;
    a = std::stod(kv["a"], &used);
    if (used != kv["a"].size()) throw ValidationError("trailing characters");
  } catch (const std::exception&) {
    throw ValidationError("lattice text: bad spacing '" + kv["a"] + "'");
  }
  return Lattice(to_int(kv["d"]), to_int(kv["L"]), a, boundary_from_string(kv["bc"]));
}

}  // namespace ymb
