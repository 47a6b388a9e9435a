#pragma once

// Effective toric-code Hamiltonian on the link spins of a torus,
//   H = -lambda_J sum_s prod_{i in s} tau^z_i - sum_p lambda_flip(p) prod_{i in p} tau^x_i,
// with a combinatorial spectrum oracle for cross-checking diagonalization.

#include <cstdint>
#include <vector>

#include "cgs/eigensolver.hpp"
#include "cgs/lattice.hpp"
#include "cgs/spin_operator.hpp"

namespace cgs {

inline constexpr std::size_t kMaxQuantumLinks = 24;

struct StabilizerModelParams {
  double lambda_J = 1.0;
  /// One entry per plaquette.
  std::vector<double> lambda_flip;

  static StabilizerModelParams uniform(const LatticeGeometry& g, double lambda_J, double lambda_flip);
  /// `type_a` on plaquettes with x+y even, `type_b` on the rest.
  static StabilizerModelParams two_valued(const LatticeGeometry& g, double lambda_J, double type_a,
                                          double type_b);

  void validate(const LatticeGeometry& g) const;
};

/// Throws a size-guard error above kMaxQuantumLinks.
void require_quantum_size(const LatticeGeometry& g);

/// prod tau^z over the star of `s`.
PauliSum star_operator(const LatticeGeometry& g, SiteIndex s);
/// prod tau^x over the boundary of `p` (the plaquette generator G_p).
PauliSum plaquette_operator(const LatticeGeometry& g, PlaquetteIndex p);

PauliSum effective_hamiltonian_terms(const LatticeGeometry& g, const StabilizerModelParams& params);
SparseMatrix build_effective_hamiltonian(const LatticeGeometry& g, const StabilizerModelParams& params);

/// Exact spectrum from the commuting stabilizers: star and plaquette
/// eigenvalue patterns with even numbers of violations, each with the
/// four-fold topological degeneracy of the torus. Ascending.
std::vector<SpectrumLevel> stabilizer_spectrum_oracle(const LatticeGeometry& g,
                                                      const StabilizerModelParams& params);

/// Expands levels into one value per state, ascending.
std::vector<double> expand_levels(const std::vector<SpectrumLevel>& levels, std::size_t limit);

struct ConservationReport {
  /// max over p, p' of ||[G_p, G_p']||_F
  double generator_commutator = 0.0;
  /// max over p of ||[H, G_p]||_F
  double hamiltonian_commutator = 0.0;
};

ConservationReport check_conserved_plaquettes(const SparseMatrix& h, const LatticeGeometry& g);

/// Classical energy separation attached to one pi-shifted link: the two
/// stars it touches go from all-equal phases to three-up-one-down, each
/// with matter re-tethered. Equals 8J.
double classical_star_gap(double J = 1.0);

}  // namespace cgs
