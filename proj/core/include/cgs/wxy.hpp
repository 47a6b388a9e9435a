#pragma once

// Spin-1/2 limit of the array:
//   H = -J sum_s sum_{n,i in s} W_ni (mu^x_n sigma^x_i + mu^y_n sigma^y_i)
// on small clusters, with optional bias fields on matter and gauge spins.
// Spin order: four matter spins per site (site-major), then gauge spins.

#include <array>
#include <string>
#include <vector>

#include "cgs/hadamard.hpp"
#include "cgs/lattice.hpp"
#include "cgs/spin_operator.hpp"

namespace cgs {

struct WxyCorner {
  int site = 0;
  std::array<int, 2> legs{};
};

/// Local Z2 generator: pi on `gauge` spins (sigma^z), and at every corner
/// the L partner of the flipped legs acting on that site's matter spins.
struct WxyGenerator {
  std::string label;
  std::vector<WxyCorner> corners;
  std::vector<int> gauge;
};

struct WxyCluster {
  std::string name;
  int n_sites = 0;
  int n_gauge = 0;
  /// Gauge spin (0-based among gauge spins) on each leg, N E S W.
  std::vector<std::array<int, 4>> legs;
  std::vector<WxyGenerator> generators;

  int n_spins() const { return 4 * n_sites + n_gauge; }
  int matter_spin(int site, int n) const { return 4 * site + n; }
  int gauge_spin(int gauge) const { return 4 * n_sites + gauge; }

  /// Throws on inconsistent indices or more than kMaxSpins spins.
  void validate() const;

  /// One waffle with its four gauge spins; generators flip every even
  /// subset of legs (six pairs and all four).
  static WxyCluster single_waffle();
  /// Two waffles on a ring of length two: they share their E-W links, the
  /// N and S legs are open. The two shared links form the one plaquette.
  static WxyCluster two_site_ring();
  /// Every site and link of a torus; one generator per plaquette.
  static WxyCluster from_lattice(const LatticeGeometry& g);
};

struct WxyParams {
  double J = 1.0;
  SignMatrix W = SignMatrix::standard();
  double h_matter = 0.0;
  double h_gauge = 0.0;

  void validate() const;
};

PauliSum wxy_hamiltonian_terms(const WxyCluster& cluster, const WxyParams& params);
SparseMatrix wxy_hamiltonian(const WxyCluster& cluster, const WxyParams& params);

/// h_matter sum mu^z + h_gauge sum sigma^z.
PauliSum wxy_bias_terms(const WxyCluster& cluster, double h_matter, double h_gauge);

/// sum (mu^z + sigma^z) / 2.
PauliSum total_sz(const WxyCluster& cluster);

/// Signed permutation matrix of generator `k`.
SparseMatrix wxy_generator(const WxyCluster& cluster, std::size_t k, const SignMatrix& w);

struct WxyConservation {
  double generator_commutator = 0.0;    // max ||[G_a, G_b]||
  double hamiltonian_commutator = 0.0;  // max ||[H_J, G]||
  double bias_commutator = 0.0;         // max ||[bias, G]||
  double sz_commutator = 0.0;           // ||[H, S^z_total]||
};

WxyConservation check_wxy_conservation(const WxyCluster& cluster, const WxyParams& params);

}  // namespace cgs
