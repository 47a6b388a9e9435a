#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "cgs/hadamard.hpp"
#include "cgs/lattice.hpp"

namespace cgs {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any finite angle into [0, 2pi).
double canonical_phase(double angle);

/// Signed distance between two angles modulo `period`, in (-period/2, period/2].
double angle_difference(double a, double b, double period = kTwoPi);

using SitePhases = std::array<double, 4>;

/// Superconducting phases: theta per link (gauge wire), phi per matter wire.
struct PhaseConfig {
  std::vector<double> theta;
  std::vector<double> phi;

  static PhaseConfig zeros(const LatticeGeometry& g);

  /// Throws cgs::Error when the vectors do not cover every link and matter
  /// wire of `g` or an entry is not finite.
  void require_covers(const LatticeGeometry& g) const;
  void canonicalize();

  SitePhases site_theta(const LatticeGeometry& g, SiteIndex s) const;
  SitePhases site_phi(const LatticeGeometry& g, SiteIndex s) const;
  void set_site_phi(const LatticeGeometry& g, SiteIndex s, const SitePhases& values);
};

/// Applies the pair at one site: gauge legs flagged -1 in R get +pi,
/// matter phases become phi_{p(n)} + pi [s_n == -1]. The links are shared,
/// so this is a symmetry of the site's star energy only; lattice-wide
/// invariance needs the plaquette generator below. Result is canonicalized.
PhaseConfig apply_gauge_transformation(const PhaseConfig& config, const LatticeGeometry& g,
                                       SiteIndex site, const AutomorphismPair& pair);

/// The plaquette generator G_p: +pi on the four boundary links (once each),
/// and at every corner the L partner of the two flipped legs applied to the
/// matter phases. Leaves H_J invariant.
PhaseConfig apply_plaquette_generator(const PhaseConfig& config, const LatticeGeometry& g,
                                      PlaquetteIndex p, const SignMatrix& w);

}  // namespace cgs
