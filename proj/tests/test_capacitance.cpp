#include <gtest/gtest.h>

#include <algorithm>

#include "cgs/capacitance.hpp"
#include "cgs/error.hpp"
#include "cgs/squid.hpp"

using namespace cgs;

namespace {

// Assembles C from the individual capacitors: a capacitor c between wires
// i and j adds c (e_i - e_j)(e_i - e_j)^T, one to ground adds c e_i e_i^T.
Matrix8 assemble(const SiteCapacitances& sc) {
  Matrix8 c = Matrix8::Zero();
  auto between = [&](int i, int j, double v) {
    c(i, i) += v;
    c(j, j) += v;
    c(i, j) -= v;
    c(j, i) -= v;
  };
  const double mp[4] = {0.0, sc.C_m_par, sc.C_m_par2, sc.C_m_par3};
  const double gp[4] = {0.0, sc.C_g_par, sc.C_g_par2, sc.C_g_par3};
  for (int i = 0; i < 4; ++i) {
    c(i, i) += sc.C_m;
    c(4 + i, 4 + i) += sc.C_g / 2.0;
    for (int j = 0; j < 4; ++j) between(i, 4 + j, sc.C_J);
    for (int j = i + 1; j < 4; ++j) {
      between(i, j, mp[j - i]);
      between(4 + i, 4 + j, gp[j - i]);
    }
  }
  return c;
}

}  // namespace

TEST(Capacitance, MatrixMatchesCapacitorAssembly) {
  const SiteCapacitances sc = SiteCapacitances::typical();
  const Matrix8 c = build_capacitance_matrix(sc);
  EXPECT_LT((c - assemble(sc)).norm(), 1e-28);
  EXPECT_TRUE(c.isApprox(c.transpose()));
  Eigen::SelfAdjointEigenSolver<Matrix8> es(c);
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  EXPECT_TRUE(sc.junction_dominant());
}

TEST(Capacitance, KineticEnergyMatchesLinearSolve) {
  const Matrix8 c = build_capacitance_matrix(SiteCapacitances::typical());
  Vector8 q = Vector8::Zero();
  q(0) = 1.0;
  q(5) = -1.0;
  const KineticEnergy k = kinetic_energy(q, c);
  const double e2 = 2.0 * units::kElementaryCharge;
  const double want = 0.5 * e2 * e2 * q.dot(c.fullPivLu().solve(q));
  EXPECT_NEAR(k.joules / want, 1.0, 1e-12);
  EXPECT_NEAR(k.kelvin, want / units::kBoltzmann, 1e-12 * k.kelvin);
  EXPECT_GT(k.condition_number, 1.0);
}

TEST(Capacitance, RejectsIndefinite) {
  Matrix8 c = Matrix8::Identity();
  c(3, 3) = -1.0;
  EXPECT_THROW(kinetic_energy(Vector8::Ones(), c), Error);
  EXPECT_THROW(kinetic_energy(Vector8::Ones(), Matrix8::Zero()), Error);
  Matrix8 asym = Matrix8::Identity();
  asym(0, 1) = 0.5;
  EXPECT_THROW(kinetic_energy(Vector8::Ones(), asym), Error);
}

TEST(Capacitance, RelabelingIsEquivariant) {
  const CapacitanceNetwork net = CapacitanceNetwork::from_site(SiteCapacitances::typical());
  std::array<int, 4> perm{2, 0, 3, 1};
  const Matrix8 p = matter_permutation(perm);
  const Matrix8 lhs = build_capacitance_matrix(net.permuted_matter(perm));
  const Matrix8 rhs = p * build_capacitance_matrix(net) * p.transpose();
  EXPECT_LT((lhs - rhs).norm(), 1e-28);
  EXPECT_THROW(net.permuted_matter({0, 0, 1, 2}), Error);
}

TEST(Capacitance, SymmetryBreakingMetric) {
  SiteCapacitances clean = SiteCapacitances::typical();
  clean.C_m_par = clean.C_m_par2 = clean.C_m_par3 = 0.0;
  EXPECT_LT(symmetry_breaking_metric(clean), 1e-12);
  // Equal parasitics at every separation keep full permutation symmetry.
  SiteCapacitances uniform = clean;
  uniform.C_m_par = uniform.C_m_par2 = uniform.C_m_par3 = 1e-15;
  EXPECT_LT(symmetry_breaking_metric(uniform), 1e-12);
  const double typical = symmetry_breaking_metric(SiteCapacitances::typical());
  EXPECT_GT(typical, 1e-6);
  EXPECT_LT(typical, 0.05);
  SiteCapacitances worse = SiteCapacitances::typical();
  worse.C_m_par *= 5.0;
  EXPECT_GT(symmetry_breaking_metric(worse), typical);
}
