#pragma once

// Fully-packed U(1) loop coverings and the Z2 loop gas of the classical
// ground-state manifold.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cgs/lattice.hpp"
#include "cgs/phase_config.hpp"

namespace cgs {

/// One leg pairing per site.
struct PairingConfig {
  std::vector<Pairing> pairing;

  static PairingConfig uniform(const LatticeGeometry& g, Pairing p);
  /// Elementary loops around every other plaquette. `sublattice` 0 circles
  /// plaquettes with x+y even, 1 those with x+y odd.
  static PairingConfig crystal(const LatticeGeometry& g, int sublattice = 0);

  friend bool operator==(const PairingConfig&, const PairingConfig&) = default;
};

struct Loop {
  std::vector<LinkIndex> links;
  int winding_x = 0;
  int winding_y = 0;

  bool contractible() const { return winding_x == 0 && winding_y == 0; }
};

struct CorrelatorBin {
  double distance = 0.0;
  double mean = 0.0;
  double error = 0.0;
  std::size_t pairs = 0;
};

struct LoopStatistics {
  std::size_t n_loops = 0;
  std::size_t n_winding = 0;
  std::map<std::size_t, std::size_t> length_histogram;
  /// Filled by the sampler only.
  std::vector<CorrelatorBin> correlators;
};

struct LoopCovering {
  LoopStatistics stats;
  std::vector<Loop> loops;
  /// Loop id of every link.
  std::vector<std::size_t> loop_of_link;
};

/// Follows pairings through the sites to partition every link into closed
/// loops. Loops are ordered by their smallest link index.
LoopCovering loops_from_pairing(const PairingConfig& pc, const LatticeGeometry& g);

/// Allocation-free loop counter for hot loops (enumeration, sampling).
/// Holds scratch space, so use one instance per thread.
class LoopTracer {
 public:
  explicit LoopTracer(const LatticeGeometry& g);

  /// Number of loops for a pairing array of num_sites() entries.
  int count(const Pairing* pairing, int* n_winding = nullptr);

 private:
  int lx_;
  int ly_;
  std::size_t n_links_;
  // Indexed by 4 * site + leg.
  std::vector<std::uint32_t> link_;
  std::vector<std::uint32_t> neighbor_;
  std::vector<std::uint8_t> visited_;
};

/// Gauge phases constant along each loop (`loop_phases[k]` on loop k, plus
/// pi on links flagged in `pi_shift`), matter phases tethered.
PhaseConfig phases_from_pairing(const LatticeGeometry& g, const PairingConfig& pc,
                                const std::vector<double>& loop_phases, const SignMatrix& w,
                                const std::vector<std::uint8_t>& pi_shift = {});

/// Exhaustive table of all 3^N_sites coverings.
struct LoopEnumeration {
  std::uint64_t total = 0;
  /// count_by_loops[n] = number of coverings with n loops.
  std::vector<std::uint64_t> count_by_loops;
  /// (n_loops, n_winding_loops) -> count.
  std::map<std::pair<int, int>, std::uint64_t> count_by_sector;
  int max_loops = 0;
  std::vector<PairingConfig> argmax;

  /// Sum over coverings of lambda^{n_loops}.
  double partition_function(double lambda) const;
};

inline constexpr std::size_t kMaxEnumerationSites = 16;

/// Throws a size-guard error above kMaxEnumerationSites. Work is sharded
/// over `workers` threads; the result does not depend on the worker count.
LoopEnumeration enumerate_loop_coverings(const LatticeGeometry& g, unsigned workers = 1);

struct LoopPartitionResult {
  double value = 0.0;
  int max_loops = 0;
  std::vector<PairingConfig> argmax;
};

LoopPartitionResult loop_partition_function(const LatticeGeometry& g, double lambda,
                                            unsigned workers = 1);

/// tau per link, +1 or -1.
struct Z2Config {
  std::vector<std::int8_t> tau;

  static Z2Config all_up(const LatticeGeometry& g);
  friend bool operator==(const Z2Config&, const Z2Config&) = default;
};

/// Product of tau around the star of `s`.
int star_parity(const Z2Config& z, const LatticeGeometry& g, SiteIndex s);
bool satisfies_star_constraints(const Z2Config& z, const LatticeGeometry& g);
Z2Config apply_plaquette_flip(const Z2Config& z, const LatticeGeometry& g, PlaquetteIndex p);

/// Rank over GF(2) of 0/1 row vectors (each row packed into 64-bit words).
std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows, std::size_t n_cols);

/// Number of star-constraint-satisfying tau configs, 2^(N_links - rank).
std::uint64_t count_z2_configs(const LatticeGeometry& g);
/// Brute force over 2^N_links; guarded at 24 links.
std::uint64_t count_z2_configs_exhaustive(const LatticeGeometry& g);

}  // namespace cgs
