#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>

#include "cgs/eigensolver.hpp"
#include "cgs/error.hpp"
#include "cgs/rng.hpp"
#include "cgs/wxy.hpp"

using namespace cgs;

TEST(Wxy, SingleWaffleConservesEveryGenerator) {
  const WxyCluster c = WxyCluster::single_waffle();
  EXPECT_EQ(c.n_spins(), 8);
  EXPECT_EQ(c.generators.size(), 7u);
  const WxyConservation r = check_wxy_conservation(c, WxyParams{1.0, SignMatrix::standard(), 0.3, -0.2});
  EXPECT_LT(r.hamiltonian_commutator, 1e-12);
  EXPECT_LT(r.generator_commutator, 1e-12);
  EXPECT_LT(r.bias_commutator, 1e-12);
  EXPECT_LT(r.sz_commutator, 1e-12);
}

TEST(Wxy, TwoSiteRingConserves) {
  const WxyCluster c = WxyCluster::two_site_ring();
  EXPECT_EQ(c.n_spins(), 14);
  const WxyConservation r = check_wxy_conservation(c, WxyParams{});
  EXPECT_LT(r.hamiltonian_commutator, 1e-12);
  EXPECT_LT(r.generator_commutator, 1e-12);
  EXPECT_LT(r.sz_commutator, 1e-12);
}

TEST(Wxy, GeneratorsAreSignedPermutations) {
  const WxyCluster c = WxyCluster::single_waffle();
  for (std::size_t k = 0; k < c.generators.size(); ++k) {
    const SparseMatrix gk = wxy_generator(c, k, SignMatrix::standard());
    const SparseMatrix sq = gk * gk;
    // G^2 is diagonal with +-1 entries; G^T G is the identity.
    const SparseMatrix gtg = SparseMatrix(gk.transpose()) * gk;
    for (int i = 0; i < gtg.rows(); ++i) EXPECT_DOUBLE_EQ(gtg.coeff(i, i), 1.0);
    EXPECT_EQ(gk.nonZeros(), gk.rows());
    EXPECT_EQ(sq.nonZeros(), sq.rows());
  }
}

TEST(Wxy, TransverseFieldOnGaugeBreaksConservation) {
  const WxyCluster c = WxyCluster::single_waffle();
  PauliSum h = wxy_hamiltonian_terms(c, WxyParams{});
  h.add_x(c.gauge_spin(0), 0.37);
  const SparseMatrix hm = h.to_sparse();
  double worst = 0.0;
  for (std::size_t k = 0; k < c.generators.size(); ++k)
    worst = std::max(worst, commutator_norm(hm, wxy_generator(c, k, SignMatrix::standard())));
  EXPECT_GT(worst, 0.1);
}

TEST(Wxy, SpectrumIsSymmetricWithoutBias) {
  // Flipping every sigma^z maps H to -H (the hopping is odd in the gauge spins).
  const WxyCluster c = WxyCluster::single_waffle();
  const std::vector<double> e = full_spectrum(wxy_hamiltonian(c, WxyParams{}));
  ASSERT_EQ(e.size(), 256u);
  for (std::size_t k = 0; k < e.size(); ++k) EXPECT_NEAR(e[k], -e[e.size() - 1 - k], 1e-10);
}

TEST(Wxy, SingleExcitationSectorMatchesFlatBand) {
  // One up-spin among eight: the hopping block is [[0, 2JW], [2JW^T, 0]],
  // whose eigenvalues are +-2J * singular values of W = +-4J.
  const WxyCluster c = WxyCluster::single_waffle();
  const SparseMatrix h = wxy_hamiltonian(c, WxyParams{});
  const SparseMatrix sz = total_sz(c).to_sparse();
  std::vector<int> sector;
  for (int b = 0; b < h.rows(); ++b)
    if (__builtin_popcount(b) == 7) sector.push_back(b);
  ASSERT_EQ(sector.size(), 8u);
  Eigen::MatrixXd block(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) block(i, j) = h.coeff(sector[i], sector[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(es.eigenvalues()[k], -4.0, 1e-12);
  for (int k = 4; k < 8; ++k) EXPECT_NEAR(es.eigenvalues()[k], 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(sz.coeff(sector[0], sector[0]), -3.0);
}

TEST(Wxy, ValidationRejectsBadClusters) {
  WxyCluster c = WxyCluster::single_waffle();
  c.legs[0][2] = 9;
  EXPECT_THROW(c.validate(), Error);
  EXPECT_THROW(WxyCluster::from_lattice(build_lattice(4, 4)), Error);
  EXPECT_NO_THROW(WxyCluster::from_lattice(build_lattice(2, 2)).validate());
  EXPECT_THROW((WxyParams{-1.0}.validate()), Error);
}
