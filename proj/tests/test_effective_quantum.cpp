#include <gtest/gtest.h>

#include "cgs/effective_quantum.hpp"
#include "cgs/error.hpp"

using namespace cgs;

TEST(EffectiveQuantum, TwoByTwoSpectrumMatchesStabilizerCount) {
  const auto g = build_lattice(2, 2);
  for (const auto& params : {StabilizerModelParams::uniform(g, 1.0, 0.3),
                             StabilizerModelParams::two_valued(g, 0.7, 0.5, 0.2)}) {
    const SparseMatrix h = build_effective_hamiltonian(g, params);
    const std::vector<double> spectrum = full_spectrum(h);
    ASSERT_EQ(spectrum.size(), 256u);
    const auto oracle = expand_levels(stabilizer_spectrum_oracle(g, params), 256);
    for (std::size_t k = 0; k < spectrum.size(); ++k) EXPECT_NEAR(spectrum[k], oracle[k], 1e-10) << k;
  }
}

TEST(EffectiveQuantum, GroundStateIsFourFoldDegenerate) {
  const auto g = build_lattice(2, 2);
  const auto params = StabilizerModelParams::uniform(g, 2.0, 0.5);
  const auto levels = group_levels(full_spectrum(build_effective_hamiltonian(g, params)), 1e-9);
  EXPECT_NEAR(levels[0].energy, -2.0 * 4 - 0.5 * 4, 1e-10);
  EXPECT_EQ(levels[0].degeneracy, 4u);
  // Cheapest excitation: two flipped plaquettes.
  EXPECT_NEAR(levels[1].energy - levels[0].energy, 2.0 * 2 * 0.5, 1e-10);
}

TEST(EffectiveQuantum, TwoValuedFlipsSplitPlaquetteTypes) {
  const auto g = build_lattice(2, 2);
  const auto params = StabilizerModelParams::two_valued(g, 1.0, 0.4, 0.1);
  EXPECT_DOUBLE_EQ(params.lambda_flip[g.plaquette(0, 0).value], 0.4);
  EXPECT_DOUBLE_EQ(params.lambda_flip[g.plaquette(1, 0).value], 0.1);
  EXPECT_DOUBLE_EQ(params.lambda_flip[g.plaquette(1, 1).value], 0.4);
  const auto levels = group_levels(full_spectrum(build_effective_hamiltonian(g, params)), 1e-9);
  // Two type-b plaquettes flipped is the cheapest pair.
  EXPECT_NEAR(levels[1].energy - levels[0].energy, 0.4, 1e-10);
}

TEST(EffectiveQuantum, PlaquettesAreConserved) {
  const auto g = build_lattice(2, 2);
  const SparseMatrix h = build_effective_hamiltonian(g, StabilizerModelParams::two_valued(g, 1.0, 0.3, 0.2));
  const ConservationReport r = check_conserved_plaquettes(h, g);
  EXPECT_LT(r.hamiltonian_commutator, 1e-12);
  EXPECT_LT(r.generator_commutator, 1e-12);
  for (std::size_t s = 0; s < g.num_sites(); ++s)
    EXPECT_LT(commutator_norm(star_operator(g, SiteIndex(s)).to_sparse(), h), 1e-12);
}

TEST(EffectiveQuantum, KrylovOnTwoByFour) {
  const auto g = build_lattice(2, 4);
  const auto params = StabilizerModelParams::uniform(g, 1.0, 0.25);
  const SparseMatrix h = build_effective_hamiltonian(g, params);
  EigenOptions opt;
  opt.n_low = 8;
  opt.workers = 2;
  const EigenResult r = exact_diagonalize(h, opt);
  EXPECT_TRUE(r.converged);
  const auto oracle = expand_levels(stabilizer_spectrum_oracle(g, params), 8);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(r.values[k], oracle[k], 1e-8);
  EXPECT_EQ(group_levels(r.values, 1e-7)[0].degeneracy, 4u);
}

TEST(EffectiveQuantum, GuardsAndValidation) {
  const auto big = build_lattice(4, 4);
  try {
    require_quantum_size(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeGuard);
  }
  const auto g = build_lattice(2, 2);
  StabilizerModelParams p = StabilizerModelParams::uniform(g, 1.0, 0.1);
  p.lambda_flip.pop_back();
  EXPECT_THROW(p.validate(g), Error);
  EXPECT_THROW(StabilizerModelParams::uniform(g, -1.0, 0.1).validate(g), Error);
  EXPECT_DOUBLE_EQ(classical_star_gap(2.0), 16.0);
}
