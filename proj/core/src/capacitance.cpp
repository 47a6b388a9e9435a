#include "cgs/capacitance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cgs/error.hpp"
#include "cgs/squid.hpp"

namespace cgs {

namespace {

Matrix4 by_separation(double c1, double c2, double c3) {
  Matrix4 m = Matrix4::Zero();
  const double by_d[4] = {0.0, c1, c2, c3};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = by_d[std::abs(i - j)];
  return m;
}

void fill_block(Matrix8& c, int offset, double self, const Matrix4& par) {
  for (int i = 0; i < 4; ++i) {
    c(offset + i, offset + i) = self + (par.row(i).sum() - par(i, i));
    for (int j = 0; j < 4; ++j)
      if (i != j) c(offset + i, offset + j) = -par(i, j);
  }
}

Matrix8 checked_inverse(const Matrix8& C, double* condition) {
  if (!C.allFinite()) throw numeric_failure("capacitance matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Matrix8> es(C);
  const auto ev = es.eigenvalues();
  const double lo = ev.minCoeff(), hi = ev.cwiseAbs().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e14)
    throw numeric_failure("capacitance matrix is singular or not positive definite (min eigenvalue " +
                          std::to_string(lo) + ")");
  if (condition) *condition = hi / lo;
  return es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

void SiteCapacitances::validate() const {
  for (double v : {C_J, C_m, C_g, C_m_par, C_m_par2, C_m_par3, C_g_par, C_g_par2, C_g_par3})
    if (!(v >= 0.0) || !std::isfinite(v)) throw invalid_argument("capacitances must be finite and >= 0");
}

bool SiteCapacitances::junction_dominant() const {
  const double largest = std::max({C_m_par, C_m_par2, C_m_par3, C_g_par, C_g_par2, C_g_par3});
  return C_J > 10.0 * largest;
}

SiteCapacitances SiteCapacitances::typical() {
  constexpr double fF = 1e-15;
  return {50 * fF, 10 * fF, 10 * fF, 1 * fF, 0.3 * fF, 0.1 * fF, 1 * fF, 0.3 * fF, 0.1 * fF};
}

CapacitanceNetwork CapacitanceNetwork::from_site(const SiteCapacitances& sc) {
  sc.validate();
  CapacitanceNetwork n;
  n.C_J = sc.C_J;
  n.C_m = sc.C_m;
  n.C_g = sc.C_g;
  n.matter_parasitic = by_separation(sc.C_m_par, sc.C_m_par2, sc.C_m_par3);
  n.gauge_parasitic = by_separation(sc.C_g_par, sc.C_g_par2, sc.C_g_par3);
  return n;
}

CapacitanceNetwork CapacitanceNetwork::permuted_matter(const std::array<int, 4>& perm) const {
  std::array<int, 4> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 4>{0, 1, 2, 3}) throw invalid_argument("not a permutation of 0..3");
  CapacitanceNetwork out = *this;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.matter_parasitic(perm[i], perm[j]) = matter_parasitic(i, j);
  return out;
}

void CapacitanceNetwork::validate() const {
  for (double v : {C_J, C_m, C_g})
    if (!(v >= 0.0) || !std::isfinite(v)) throw invalid_argument("capacitances must be finite and >= 0");
  for (const Matrix4* m : {&matter_parasitic, &gauge_parasitic}) {
    if (!m->allFinite() || (m->array() < 0.0).any()) throw invalid_argument("parasitics must be >= 0");
    if (!m->isApprox(m->transpose(), 0.0)) throw invalid_argument("parasitic matrix must be symmetric");
  }
}

Matrix8 build_capacitance_matrix(const CapacitanceNetwork& net) {
  net.validate();
  Matrix8 c = Matrix8::Zero();
  fill_block(c, 0, net.C_m + 4.0 * net.C_J, net.matter_parasitic);
  fill_block(c, 4, net.C_g / 2.0 + 4.0 * net.C_J, net.gauge_parasitic);
  c.block<4, 4>(0, 4).setConstant(-net.C_J);
  c.block<4, 4>(4, 0).setConstant(-net.C_J);
  return c;
}

Matrix8 build_capacitance_matrix(const SiteCapacitances& sc) {
  return build_capacitance_matrix(CapacitanceNetwork::from_site(sc));
}

KineticEnergy kinetic_energy(const Vector8& Q, const Matrix8& C) {
  if (!Q.allFinite()) throw invalid_argument("charge vector has non-finite entries");
  if (!C.isApprox(C.transpose(), 1e-12)) throw invalid_argument("capacitance matrix is not symmetric");
  KineticEnergy k;
  const Matrix8 inv = checked_inverse(C, &k.condition_number);
  const double q = 2.0 * units::kElementaryCharge;
  k.joules = 0.5 * q * q * Q.dot(inv * Q);
  k.kelvin = units::joules_to_kelvin(k.joules);
  return k;
}

Matrix8 matter_permutation(const std::array<int, 4>& perm) {
  Matrix8 p = Matrix8::Zero();
  for (int i = 0; i < 4; ++i) p(perm[i], i) = 1.0;
  for (int i = 4; i < 8; ++i) p(i, i) = 1.0;
  return p;
}

double symmetry_breaking_metric(const Matrix8& C) {
  const Matrix8 inv = checked_inverse(C, nullptr);
  const double norm = inv.norm();
  std::array<int, 4> perm{0, 1, 2, 3};
  double worst = 0.0;
  do {
    const Matrix8 p = matter_permutation(perm);
    worst = std::max(worst, (p * inv * p.transpose() - inv).norm() / norm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return worst;
}

double symmetry_breaking_metric(const SiteCapacitances& sc) {
  return symmetry_breaking_metric(build_capacitance_matrix(sc));
}

}  // namespace cgs
