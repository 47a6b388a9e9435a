#pragma once

// Hadamard coupling matrix and the monomial automorphisms behind
// combinatorial gauge symmetry.

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace cgs {

using IntMatrix4 = std::array<std::array<int, 4>, 4>;

/// A 4x4 matrix with entries in {-1, +1}. Rows index matter wires, columns
/// index gauge legs.
class SignMatrix {
 public:
  /// Throws cgs::Error if any entry is not +1 or -1.
  explicit SignMatrix(const IntMatrix4& entries);

  /// The coupling used throughout: -1 on the diagonal, +1 elsewhere.
  static SignMatrix standard();

  int operator()(std::size_t row, std::size_t col) const { return entries_[row][col]; }
  const IntMatrix4& entries() const { return entries_; }
  SignMatrix transposed() const;

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  IntMatrix4 entries_;
};

/// True iff W^T W == 4 * identity in exact integer arithmetic.
bool is_hadamard(const SignMatrix& w);

/// Generalized permutation matrix. Row n has its single nonzero entry
/// `signs[n]` in column `permutation[n]`.
///
/// Acting on the matter phases of a site, L maps phi_n to
/// phi_{permutation[n]} + pi * [signs[n] == -1].
struct MonomialMatrix {
  std::array<int, 4> permutation{0, 1, 2, 3};
  std::array<int, 4> signs{1, 1, 1, 1};

  static MonomialMatrix identity() { return {}; }
  static MonomialMatrix diagonal(const std::array<int, 4>& signs);
  /// Throws cgs::Error unless `dense` has exactly one +-1 per row and column.
  static MonomialMatrix from_dense(const IntMatrix4& dense);

  IntMatrix4 dense() const;
  MonomialMatrix inverse() const;
  bool is_diagonal() const;
  /// Throws unless permutation is a bijection on {0..3} and signs are +-1.
  void validate() const;

  friend bool operator==(const MonomialMatrix&, const MonomialMatrix&) = default;
  friend auto operator<=>(const MonomialMatrix&, const MonomialMatrix&) = default;
};

/// Matrix product a * b.
MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b);

/// (L, R) with L^{-1} W R = W. Gauge legs are shared between sites, so the
/// physical symmetry requires R diagonal; `right_is_diagonal()` reports it.
struct AutomorphismPair {
  MonomialMatrix left;
  MonomialMatrix right;

  static AutomorphismPair identity() { return {}; }
  /// The example pair quoted for the standard W: L swaps (1,2) and swaps
  /// (3,4) with a sign flip, R flips gauge legs 1 and 2.
  static AutomorphismPair standard_example();

  bool right_is_diagonal() const { return right.is_diagonal(); }

  friend bool operator==(const AutomorphismPair&, const AutomorphismPair&) = default;
  friend auto operator<=>(const AutomorphismPair&, const AutomorphismPair&) = default;
};

/// Group product, component-wise matrix multiplication.
AutomorphismPair compose(const AutomorphismPair& a, const AutomorphismPair& b);

/// Exact integer check of L^{-1} W R == W.
bool verify_automorphism(const SignMatrix& w, const AutomorphismPair& pair);

enum class RightFamily {
  Diagonal,  // 16 sign patterns; the physical gauge group
  Monomial,  // all 384 monomial R, for exploration
};

/// Exhaustive search over all 384 monomial L and the requested family of R.
/// Result is sorted (by R, then L) and deterministic.
std::vector<AutomorphismPair> enumerate_automorphism_pairs(
    const SignMatrix& w, RightFamily family = RightFamily::Diagonal);

/// All 384 signed permutations of four elements in lexicographic order.
std::vector<MonomialMatrix> all_monomial_matrices();

/// Smallest L (in enumeration order) such that (L, diag(right_signs)) is an
/// automorphism of w. Throws when no such L exists.
MonomialMatrix left_partner(const SignMatrix& w, const std::array<int, 4>& right_signs);

/// Eigenvalues of the 8x8 bipartite block [[0, W], [W^T, 0]] grouped into
/// (value, multiplicity), ascending. Eigenvalues closer than `merge_tol`
/// are merged.
std::vector<std::pair<double, int>> flat_band_spectrum(const SignMatrix& w,
                                                       double merge_tol = 1e-9);

}  // namespace cgs
