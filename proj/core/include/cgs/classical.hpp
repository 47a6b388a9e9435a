#pragma once

// Classical Josephson potential of the waffle array and its ground-state
// manifold. Energies are in units of J unless a CouplingParams says otherwise.

#include <array>
#include <optional>
#include <vector>

#include "cgs/hadamard.hpp"
#include "cgs/lattice.hpp"
#include "cgs/loops.hpp"
#include "cgs/phase_config.hpp"

namespace cgs {

inline constexpr double kTetherEpsilon = 1e-9;
inline constexpr double kPairingTolerance = 1e-6;

struct CouplingParams {
  double J = 1.0;
  SignMatrix W = SignMatrix::standard();

  /// Throws unless J > 0 and W is Hadamard.
  void validate() const;
};

/// -J sum_{n,i} W_ni cos(phi_n - theta_i) for one waffle.
double site_josephson_energy(const SitePhases& theta, const SitePhases& phi, const CouplingParams& p);

/// H_J summed over all sites of the lattice.
double josephson_energy(const PhaseConfig& config, const CouplingParams& params,
                        const LatticeGeometry& g);

struct TetherResult {
  SitePhases phi{};
  /// |sum_i W_ni e^{i theta_i}| per matter wire.
  std::array<double, 4> magnitude{};
  /// false where the magnitude is at or below the threshold; phi is then 0.
  std::array<bool, 4> defined{};

  bool all_defined() const { return defined[0] && defined[1] && defined[2] && defined[3]; }
};

/// phi_n = arg(sum_i W_ni e^{i theta_i}), the minimizer of the site energy
/// at fixed theta.
TetherResult tether_matter_phases(const SitePhases& theta, const SignMatrix& w,
                                  double eps = kTetherEpsilon);

/// Re-tethers every site of `config` in place. Returns the number of matter
/// wires whose phase was undefined (those are set to 0; they do not enter
/// the energy).
std::size_t tether_all(PhaseConfig& config, const SignMatrix& w, const LatticeGeometry& g);

/// -J sum_n |sum_i W_ni e^{i theta_i}|; >= -8J.
double site_min_energy(const SitePhases& theta, const CouplingParams& params);

/// Largest mismatch from the pairing `p`: each leg pair equal modulo pi,
/// and the two pairs carrying the same offset (0 or pi) modulo 2 pi.
double pairing_mismatch(const SitePhases& theta, Pairing p);

struct ManifoldCheck {
  bool on_manifold = false;
  std::vector<Pairing> pairings;
};

/// True iff some pairing matches within `tol` (see pairing_mismatch); lists
/// every matching pairing. This is exactly where site_min_energy = -8J.
ManifoldCheck is_min_manifold(const SitePhases& theta, double tol = kPairingTolerance);

/// Leg pairing at every site of a ground state. Where several pairings match
/// the first in (12)(34), (13)(24), (14)(23) order is taken. Throws when a
/// site is off the manifold.
PairingConfig detect_pairings(const PhaseConfig& config, const LatticeGeometry& g,
                              double tol = kPairingTolerance);

enum class FlipPath {
  Direct,  // ramp the plaquette shift 0 -> pi with everything else fixed
  Merge,   // neighbouring loops -> common zeta, ramp, restore
};

struct PathSample {
  int step = 0;
  double delta_theta = 0.0;
  double energy = 0.0;
};

struct FlipPathResult {
  double max_excursion = 0.0;
  std::vector<PathSample> samples;
  PhaseConfig final_config;
};

/// Walks a plaquette pi-flip along the chosen path with matter phases
/// re-tethered at every step. `n_steps` is per stage (the merge path has
/// three stages). Throws if `config` is not a ground state.
FlipPathResult flip_path_energy(const PhaseConfig& config, const CouplingParams& params,
                                const LatticeGeometry& g, PlaquetteIndex p, FlipPath path,
                                int n_steps = 64);

/// Energy change from adding pi to one link. With `retether` false the
/// matter phases are held fixed; otherwise both endpoint sites are
/// re-tethered.
double single_link_shift_cost(const PhaseConfig& config, const CouplingParams& params,
                              const LatticeGeometry& g, LinkIndex link, bool retether);

}  // namespace cgs
