#pragma once

// Asymmetric DC-SQUID coupler between a matter and a gauge wire: exact
// potential with the two arm oscillators minimized out, the phasor picture,
// its harmonic expansion, and flux calibration against junction disorder.
// Fluxes are in units of the flux quantum.

#include <string>
#include <vector>

namespace cgs {

namespace units {
inline constexpr double kFluxQuantum = 2.067833848e-15;      // Wb
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kBoltzmann = 1.380649e-23;            // J/K
inline double joules_to_kelvin(double e) { return e / kBoltzmann; }
inline double kelvin_to_joules(double t) { return t * kBoltzmann; }
}  // namespace units

struct SquidParams {
  double J_w = 1.0;
  double J_t = 0.1;
  double Phi_w = 0.0;
  double Phi_t = 0.0;
  double e_LJ = 0.0;

  double d_J() const { return J_t / J_w; }
  /// Throws unless J_w > 0, 0 <= J_t < J_w, e_LJ >= 0, fluxes finite.
  void validate() const;
};

/// 4 pi^2 L J_w / Phi_0^2 with L in henries and J_w in joules.
double e_lj_from_inductance(double L_arm, double J_w_joules);

struct SquidPotential {
  double energy = 0.0;  // same units as J_w
  double phi_ow = 0.0;
  double phi_ot = 0.0;
  /// Largest |dU/dphi_o| at the returned minimum.
  double gradient = 0.0;
};

/// Potential at phase difference delta = phi_n - theta_i with both
/// oscillator coordinates at their global minimum.
SquidPotential squid_potential_exact(double delta, const SquidParams& p);

struct Phasor {
  double J_eff = 0.0;
  /// Flux offset in units of Phi_0, in (-1/2, 1/2].
  double Phi_tot = 0.0;
  bool well_conditioned = true;
};

inline constexpr double kPhasorThreshold = 1e-12;

/// |J_w e^{2 pi i Phi_w} + J_t e^{2 pi i Phi_t}| and its argument / 2 pi.
Phasor squid_effective_phasor(const SquidParams& p);

inline constexpr double kMaxSeriesELJ = 0.3;

/// Coefficients (in units of J_w) of
///   c1 cos(d + a) + c_d cos(d + b) + c2 cos 2(d + a) + c3 cos 3(d + a),
/// a = 2 pi Phi_w, b = 2 pi Phi_t. Rejects e_LJ > kMaxSeriesELJ.
struct HarmonicExpansion {
  double c1 = 0.0;
  double c_d = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  double value(double delta, const SquidParams& p) const;
};

HarmonicExpansion squid_harmonic_expansion(const SquidParams& p);

struct JunctionTarget {
  std::string name;
  int sign = 1;            // +1 or -1
  double J_target = 1.0;   // > 0
  double J_w_actual = 1.0; // measured large-junction energy
};

struct Calibration {
  std::string name;
  double Phi_w = 0.0;
  double Phi_t = 0.0;
  double J_t = 0.0;
  double J_eff = 0.0;
  double Phi_tot = 0.0;
  double relative_error = 0.0;
};

/// J_t = d_J * J_w_actual. Feasible iff |J_w_actual - J_target| <= J_t.
bool calibration_feasible(const JunctionTarget& t, double d_J);

/// Fluxes realizing J_eff = J_target with offset 0 (sign +1) or 1/2
/// (sign -1). Branch: smallest |Phi_t|, then smallest |Phi_w|, then
/// Phi_w >= 0. Throws with the feasibility bound of every infeasible
/// junction.
std::vector<Calibration> calibrate_fluxes(const std::vector<JunctionTarget>& targets, double d_J);

}  // namespace cgs
