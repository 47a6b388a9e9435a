#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "cgs/eigensolver.hpp"
#include "cgs/error.hpp"
#include "cgs/rng.hpp"
#include "cgs/spin_operator.hpp"

using namespace cgs;

namespace {

using Dense = Eigen::MatrixXd;

// Direct action on basis states: Z_k |b> = (1 - 2 b_k)|b>, X_k |b> = |b ^ 2^k>.
Dense dense_term(int n, std::uint32_t x, std::uint32_t z, double c) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  Dense m = Dense::Zero(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    double sign = 1.0;
    for (int k = 0; k < n; ++k)
      if ((z >> k & 1) && (b >> k & 1)) sign = -sign;
    m(b ^ x, b) += c * sign;
  }
  return m;
}

Dense dense_sum(const PauliSum& s) {
  Dense m = Dense::Zero(s.dimension(), s.dimension());
  for (const auto& t : s.terms()) m += dense_term(s.n_spins(), t.x, t.z, t.coeff);
  return m;
}

PauliSum random_sum(int n, int n_terms, CounterRng& rng) {
  PauliSum s(n);
  const std::uint32_t mask = (1u << n) - 1;
  for (int k = 0; k < n_terms; ++k) s.add(rng.next_u32() & mask, rng.next_u32() & mask, rng.uniform() - 0.5);
  return s;
}

}  // namespace

TEST(PauliSum, SparseMatchesBasisAction) {
  CounterRng rng(41, 0);
  const PauliSum s = random_sum(5, 12, rng);
  const Dense want = dense_sum(s);
  EXPECT_LT((Dense(s.to_sparse()) - want).norm(), 1e-13);
  EXPECT_NEAR(s.simplified().frobenius_norm(), want.norm(), 1e-12);
}

TEST(PauliSum, HoppingMovesOneExcitation) {
  PauliSum h(3);
  h.add_xy_hopping(0, 2, 1.5);
  const Dense m = Dense(h.to_sparse());
  // |b0=1,b2=0> = 1 <-> |b0=0,b2=1> = 4 with amplitude 2 * coeff.
  EXPECT_DOUBLE_EQ(m(4, 1), 3.0);
  EXPECT_DOUBLE_EQ(m(1, 4), 3.0);
  EXPECT_DOUBLE_EQ(m(6, 3), 3.0);
  EXPECT_DOUBLE_EQ(m.cwiseAbs().sum(), 4 * 3.0);
}

TEST(PauliSum, ProductAndCommutatorMatchDense) {
  CounterRng rng(42, 0);
  for (int k = 0; k < 5; ++k) {
    const PauliSum a = random_sum(4, 6, rng), b = random_sum(4, 6, rng);
    const Dense da = dense_sum(a), db = dense_sum(b);
    EXPECT_LT((dense_sum(a * b) - da * db).norm(), 1e-12);
    EXPECT_LT((dense_sum(commutator(a, b)) - (da * db - db * da)).norm(), 1e-12);
    EXPECT_NEAR(commutator_norm(a.to_sparse(), b.to_sparse()), (da * db - db * da).norm(), 1e-12);
  }
}

TEST(PauliSum, SimplifyMergesAndDrops) {
  PauliSum s(2);
  s.add(1, 2, 0.5).add(1, 2, -0.5).add_z(0, 1.0).add_z(0, 1.0);
  const PauliSum t = s.simplified(1e-14);
  ASSERT_EQ(t.terms().size(), 1u);
  EXPECT_DOUBLE_EQ(t.terms()[0].coeff, 2.0);
  EXPECT_NEAR(t.frobenius_norm(), 4.0, 1e-12);
}

TEST(PauliSum, ApplyMatchesSparseWithWorkers) {
  CounterRng rng(43, 0);
  const PauliSum s = random_sum(10, 30, rng);
  const SparseMatrix m = s.to_sparse();
  std::vector<double> x(s.dimension()), y1(s.dimension()), y4(s.dimension()), y5(s.dimension());
  for (double& v : x) v = rng.uniform();
  s.apply(x.data(), y1.data(), 1);
  s.apply(x.data(), y4.data(), 4);
  sparse_matvec(m, x.data(), y5.data(), 3);
  const Eigen::VectorXd want = m * Eigen::Map<Eigen::VectorXd>(x.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(y1[i], want[i], 1e-12);
    EXPECT_EQ(y1[i], y4[i]);
    EXPECT_NEAR(y5[i], want[i], 1e-12);
  }
}

TEST(PauliSum, GuardsAndPermutations) {
  EXPECT_THROW(PauliSum(25), Error);
  EXPECT_THROW(PauliSum(2).add(4, 0, 1.0), Error);
  const SparseMatrix flip = signed_permutation_matrix(2, [](std::uint64_t b) {
    return std::pair<std::uint64_t, double>{b ^ 1u, (b & 2) ? -1.0 : 1.0};
  });
  PauliSum xz(2);
  xz.add(1, 2, 1.0);
  EXPECT_LT((Dense(flip) - dense_sum(xz)).norm(), 1e-15);
  EXPECT_THROW(signed_permutation_matrix(2, [](std::uint64_t) { return std::pair<std::uint64_t, double>{0, 1.0}; }),
               Error);
  EXPECT_DOUBLE_EQ(symmetry_defect(flip), 0.0);
  PauliSum iy(1);
  iy.add(1, 1, 1.0);
  EXPECT_DOUBLE_EQ(symmetry_defect(iy.to_sparse()), 2.0);
}

TEST(Eigensolver, KrylovMatchesDenseWithDegeneracies) {
  // Block-diagonal test matrix: a random symmetric block repeated three times.
  CounterRng rng(44, 0);
  const int n = 300;
  Dense a = Dense::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (i == j || rng.uniform() < 0.03) a(i, j) = a(j, i) = rng.uniform() - 0.5;
  SparseMatrix big(3 * n, 3 * n);
  std::vector<Eigen::Triplet<double>> trip;
  for (int b = 0; b < 3; ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a(i, j) != 0.0) trip.emplace_back(b * n + i, b * n + j, a(i, j));
  big.setFromTriplets(trip.begin(), trip.end());

  Eigen::SelfAdjointEigenSolver<Dense> es(a);
  EigenOptions opt;
  opt.n_low = 6;
  opt.dense_limit = 0;
  const EigenResult r = exact_diagonalize(big, opt);
  EXPECT_EQ(r.method, "block-krylov");
  ASSERT_GE(r.values.size(), 6u);
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(r.values[k], es.eigenvalues()[k / 3], 1e-9);
  const auto levels = group_levels(r.values, 1e-8);
  EXPECT_EQ(levels[0].degeneracy, 3u);
  EXPECT_EQ(levels[1].degeneracy, 3u);

  opt.dense_limit = 4096;
  const EigenResult d = exact_diagonalize(big, opt);
  EXPECT_EQ(d.method, "dense");
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(d.values[k], r.values[k], 1e-9);
}

TEST(Eigensolver, RejectsNonSymmetric) {
  SparseMatrix m(3, 3);
  m.insert(0, 1) = 1.0;
  m.makeCompressed();
  EXPECT_THROW(exact_diagonalize(m), Error);
}

TEST(Eigensolver, GroupLevels) {
  const auto lv = group_levels({-1.0, -1.0 + 1e-12, 0.0, 2.0, 2.0, 2.0});
  ASSERT_EQ(lv.size(), 3u);
  EXPECT_EQ(lv[0].degeneracy, 2u);
  EXPECT_EQ(lv[2].degeneracy, 3u);
}
