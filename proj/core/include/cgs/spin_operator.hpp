#pragma once

// Real spin-1/2 operators on up to 24 spins.
//
// Basis index bit k is 1 when spin k has z-eigenvalue -1. A PauliTerm is
// coeff * X^x Z^z (Z applied first), which keeps every operator built here
// real: Y_a Y_b = -X_a X_b Z_a Z_b.

#include <Eigen/SparseCore>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace cgs {

inline constexpr int kMaxSpins = 24;

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct PauliTerm {
  std::uint32_t x = 0;
  std::uint32_t z = 0;
  double coeff = 0.0;
};

class PauliSum {
 public:
  /// Throws a size-guard error above kMaxSpins.
  explicit PauliSum(int n_spins);

  int n_spins() const { return n_spins_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << n_spins_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  PauliSum& add(std::uint32_t x_mask, std::uint32_t z_mask, double coeff);
  PauliSum& add_x(int spin, double coeff);
  PauliSum& add_z(int spin, double coeff);
  /// coeff * (X_a X_b + Y_a Y_b).
  PauliSum& add_xy_hopping(int a, int b, double coeff);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(double s);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, PauliSum b) { return a += (b *= -1.0); }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  /// Like terms merged, terms with |coeff| <= tol dropped, sorted by (x, z).
  PauliSum simplified(double tol = 0.0) const;

  /// sqrt(Tr O^T O), exact from the coefficients.
  double frobenius_norm() const;

  SparseMatrix to_sparse() const;

  /// out = O * in over the full 2^n basis; rows split across `workers`.
  void apply(const double* in, double* out, unsigned workers = 1) const;

 private:
  int n_spins_;
  std::vector<PauliTerm> terms_;
};

PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Operator that maps basis state b to sign(b) * |image(b)>; `image` must
/// be a bijection.
SparseMatrix signed_permutation_matrix(
    int n_spins, const std::function<std::pair<std::uint64_t, double>(std::uint64_t)>& map);

/// ||AB - BA||_F.
double commutator_norm(const SparseMatrix& a, const SparseMatrix& b);

/// max |A - A^T|.
double symmetry_defect(const SparseMatrix& a);

/// y = A x with rows split across `workers` threads.
void sparse_matvec(const SparseMatrix& a, const double* x, double* y, unsigned workers = 1);

}  // namespace cgs
