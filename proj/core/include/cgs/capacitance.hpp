#pragma once

// Single-site electrostatics: the 8x8 capacitance matrix (matter wires
// 0-3, then gauge wires 4-7), the charging energy and a measure of how far
// the inverse matrix is from matter-permutation symmetry.

#include <Eigen/Dense>
#include <array>

namespace cgs {

using Matrix4 = Eigen::Matrix4d;
using Matrix8 = Eigen::Matrix<double, 8, 8>;
using Vector8 = Eigen::Matrix<double, 8, 1>;

/// Parasitic capacitances are indexed by wire separation (1, 2 or 3).
struct SiteCapacitances {
  double C_J = 0.0;
  double C_m = 0.0;
  double C_g = 0.0;
  double C_m_par = 0.0;
  double C_m_par2 = 0.0;
  double C_m_par3 = 0.0;
  double C_g_par = 0.0;
  double C_g_par2 = 0.0;
  double C_g_par3 = 0.0;

  void validate() const;
  /// C_J exceeds ten times every parasitic.
  bool junction_dominant() const;
  /// C_J = 50 fF, C_m = C_g = 10 fF, parasitics 1, 0.3, 0.1 fF.
  static SiteCapacitances typical();
};

/// Arbitrary symmetric pairwise parasitics within each wire family.
struct CapacitanceNetwork {
  double C_J = 0.0;
  double C_m = 0.0;
  double C_g = 0.0;
  Matrix4 matter_parasitic = Matrix4::Zero();
  Matrix4 gauge_parasitic = Matrix4::Zero();

  static CapacitanceNetwork from_site(const SiteCapacitances& sc);
  /// Relabels matter wire n as perm[n].
  CapacitanceNetwork permuted_matter(const std::array<int, 4>& perm) const;
  void validate() const;
};

Matrix8 build_capacitance_matrix(const CapacitanceNetwork& net);
Matrix8 build_capacitance_matrix(const SiteCapacitances& sc);

struct KineticEnergy {
  double joules = 0.0;
  double kelvin = 0.0;
  double condition_number = 0.0;
};

/// (1/2) (2e)^2 Q^T C^{-1} Q for Q in units of 2e and C in farads.
/// Throws on a singular or indefinite matrix.
KineticEnergy kinetic_energy(const Vector8& Q, const Matrix8& C);

/// 8x8 matrix permuting the matter wires by `perm`, gauge wires fixed.
Matrix8 matter_permutation(const std::array<int, 4>& perm);

/// max over matter permutations P of ||P C^-1 P^T - C^-1||_F / ||C^-1||_F.
double symmetry_breaking_metric(const SiteCapacitances& sc);
double symmetry_breaking_metric(const Matrix8& C);

}  // namespace cgs
