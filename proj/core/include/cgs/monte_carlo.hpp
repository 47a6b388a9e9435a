#pragma once

// Metropolis sampling of the classical phases at finite stiffness.
//
// Boltzmann weight exp(-K_eff * E / J). In EffectiveTheta mode E is the sum
// of tethered site minima (matter phases integrated out at their optimum);
// in FullThetaPhi mode both theta and phi are sampled under H_J.
//
// Loop observables are measured on a quenched copy of the state: alternating
// exact coordinate minimization drives it to the nearest ground state, where
// pairwise equality mod pi is checked at `loop_tolerance`.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cgs/classical.hpp"
#include "cgs/lattice.hpp"
#include "cgs/loops.hpp"
#include "cgs/phase_config.hpp"

namespace cgs {

enum class McMode { EffectiveTheta, FullThetaPhi };

enum class McStart { Random, Crystal };

struct McOptions {
  double K_eff = 50.0;
  McMode mode = McMode::EffectiveTheta;
  std::uint64_t sweeps = 20000;
  /// Sweeps before measuring; the proposal width adapts only here.
  std::uint64_t burn_in = 2000;
  std::uint64_t measure_every = 10;
  std::uint64_t seed = 0;
  std::uint64_t chain_id = 0;
  McStart start = McStart::Random;
  double target_acceptance = 0.4;
  double initial_width = 0.5;
  double loop_tolerance = 1e-3;
  bool plaquette_moves = true;
  std::size_t n_blocks = 20;

  void validate() const;
};

struct McDiagnostics {
  double link_acceptance = 0.0;
  double matter_acceptance = 0.0;
  double plaquette_acceptance = 0.0;
  double link_width = 0.0;
  double matter_width = 0.0;
  std::size_t measurements = 0;
  /// Sites where the quenched state matched no pairing within tolerance
  /// (nearest pairing used instead), summed over measurements.
  std::size_t unresolved_sites = 0;
  std::vector<std::string> warnings;
};

struct McResult {
  LoopStatistics stats;  // histogram summed over measurements
  double mean_loop_length = 0.0;
  double mean_loop_length_error = 0.0;
  double mean_n_loops = 0.0;
  double mean_n_loops_error = 0.0;
  double mean_energy = 0.0;
  double mean_energy_error = 0.0;
  /// Energy at every measurement, in units of J.
  std::vector<double> energy_series;
  std::vector<double> loop_length_series;
  McDiagnostics diagnostics;
  PhaseConfig final_config;
};

/// One Metropolis chain. Identical options give identical results.
McResult mc_sample(const LatticeGeometry& g, const CouplingParams& params, const McOptions& options);

/// Independent chains with chain ids 0..n_chains-1 run over `workers`
/// threads and merged in chain order. Chain means are averaged; the error
/// combines the per-chain block errors.
McResult mc_sample_chains(const LatticeGeometry& g, const CouplingParams& params,
                          const McOptions& options, std::size_t n_chains, unsigned workers);

/// Drives `config` to a nearby ground state by alternating exact
/// minimization over phi (tethering) and over each theta. Returns the final
/// energy; `iterations` reports the passes used.
double quench(PhaseConfig& config, const CouplingParams& params, const LatticeGeometry& g,
              int max_iterations = 2000, double energy_tol = 1e-13, int* iterations = nullptr);

/// Metropolis acceptance with a uniform variate u in [0,1).
inline bool metropolis_accept(double delta_e, double beta, double u) {
  return delta_e <= 0.0 || u < std::exp(-beta * delta_e);
}

/// Samples the four gauge phases of an isolated waffle with weight
/// exp(-K_eff * site_min_energy / J); returns the energy after every sweep.
std::vector<double> sample_single_site(double K_eff, const CouplingParams& params,
                                       std::uint64_t sweeps, std::uint64_t seed, double width);

/// Mean and error of a series from `n_blocks` contiguous blocks.
std::pair<double, double> block_mean_error(const std::vector<double>& series, std::size_t n_blocks);

}  // namespace cgs
