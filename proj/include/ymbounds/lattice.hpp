#pragma once

// Hypercubic lattice geometry for d = 2, 3, 4: sites, bonds, plaquettes,
// closed-form counts and the enhanced temporal (maximal-tree) gauge.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ymb {

inline constexpr int kMaxDim = 4;

enum class Boundary { Free, Periodic };

std::string to_string(Boundary bc);
Boundary boundary_from_string(std::string_view text);

/// Site coordinates, each in 1..L; direction 0 is time.
struct Site {
  std::array<int, kMaxDim> x{};

  friend bool operator==(const Site&, const Site&) = default;
};

/// b_mu(x): bond from x to x + a e^mu. A wrapping bond starts at x^mu = L and
/// ends at x^mu = 1 (periodic boundary only).
struct Bond {
  Site origin;
  int direction = 0;
  bool wraps = false;

  friend bool operator==(const Bond&, const Bond&) = default;
};

/// p_{mu nu}(x), mu < nu. Bonds are stored in holonomy order
/// b_mu(x), b_nu(x + e^mu), b_mu(x + e^nu)^dagger, b_nu(x)^dagger.
struct Plaquette {
  Site origin;
  int mu = 0;
  int nu = 1;
  std::array<Bond, 4> bonds;
};

struct LatticeCounts {
  std::int64_t sites = 0;                 // L^d
  std::int64_t free_bonds = 0;            // d (L-1) L^(d-1)
  std::int64_t extra_bonds = 0;           // d L^(d-1)
  std::int64_t periodic_bonds = 0;        // free + extra
  std::int64_t plaquettes = 0;            // free boundary
  std::int64_t periodic_plaquettes = 0;   // periodic boundary
  std::int64_t retained = 0;              // free bonds left after gauge fixing

  friend bool operator==(const LatticeCounts&, const LatticeCounts&) = default;
};

class Lattice {
 public:
  /// Throws ValidationError unless d in {2,3,4}, L >= 2 and 0 < a <= 1.
  Lattice(int d, int L, double a, Boundary bc);

  int dim() const { return d_; }
  int extent() const { return L_; }
  double spacing() const { return a_; }
  Boundary boundary() const { return bc_; }

  std::size_t num_sites() const { return num_sites_; }
  /// Mixed-radix site index, time coordinate fastest.
  std::size_t site_index(const Site& s) const;
  Site site(std::size_t index) const;

  /// Slot for b_mu(x) in a dense per-bond array of size num_sites() * dim().
  std::size_t bond_index(const Bond& b) const { return site_index(b.origin) * static_cast<std::size_t>(d_) + static_cast<std::size_t>(b.direction); }
  std::size_t bond_slots() const { return num_sites_ * static_cast<std::size_t>(d_); }
  Bond bond_at(std::size_t slot) const;

  /// True when b_mu(x) exists under this lattice's boundary condition.
  bool has_bond(const Site& origin, int mu) const;
  Bond bond(const Site& origin, int mu) const;
  Site terminal(const Bond& b) const;
  /// x + e^mu, wrapped for periodic lattices; coordinates may exceed L for free lattices.
  Site shifted(const Site& s, int mu) const;

  /// All bonds, free ones first in slot order, then wrapping bonds.
  std::vector<Bond> bonds() const;
  std::vector<Plaquette> plaquettes() const;
  Plaquette plaquette(const Site& origin, int mu, int nu) const;

  friend bool operator==(const Lattice& l, const Lattice& r) {
    return l.d_ == r.d_ && l.L_ == r.L_ && l.a_ == r.a_ && l.bc_ == r.bc_;
  }

 private:
  int d_;
  int L_;
  double a_;
  Boundary bc_;
  std::size_t num_sites_;
};

/// Counts obtained by enumerating the lattice.
LatticeCounts counts(const Lattice& lattice);

/// Counts from the closed-form expressions; plaquettes use (d(d-1)/2)(L-1)^2 L^(d-2).
LatticeCounts closed_form_counts(int d, int L);

struct GaugeFixing {
  std::vector<Bond> fixed;
  std::vector<Bond> retained;
  /// Indexed by Lattice::bond_index.
  std::vector<bool> fixed_mask;

  bool is_fixed(std::size_t slot) const { return slot < fixed_mask.size() && fixed_mask[slot]; }
};

/// All temporal bonds, plus b^1 at x^0 = 1, b^2 at x^0 = x^1 = 1 and b^3 at
/// x^0 = x^1 = x^2 = 1. Extra (wrapping) bonds are always retained.
GaugeFixing enhanced_temporal_gauge(const Lattice& lattice);

struct TreeCheck {
  bool acyclic = false;
  bool spanning = false;
  std::size_t components = 0;
};

TreeCheck check_tree(const Lattice& lattice, std::span<const Bond> edges);

/// True when adding `extra` to the edge set `edges` closes a loop.
bool closes_loop(const Lattice& lattice, std::span<const Bond> edges, const Bond& extra);

/// Flat key = value text with keys d, L, a, bc.
std::string to_text(const Lattice& lattice);
Lattice lattice_from_text(std::string_view text);

}  // namespace ymb
