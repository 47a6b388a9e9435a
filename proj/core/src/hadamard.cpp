#include "cgs/hadamard.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iterator>
#include <tuple>
#include <string>

#include "cgs/error.hpp"

namespace cgs {

namespace {

IntMatrix4 multiply(const IntMatrix4& a, const IntMatrix4& b) {
  IntMatrix4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int acc = 0;
      for (int k = 0; k < 4; ++k) acc += a[i][k] * b[k][j];
      out[i][j] = acc;
    }
  return out;
}

}  // namespace

SignMatrix::SignMatrix(const IntMatrix4& entries) : entries_(entries) {
  for (const auto& row : entries_)
    for (int v : row)
      if (v != 1 && v != -1)
        throw invalid_argument("SignMatrix entries must be +1 or -1, got " + std::to_string(v));
}

SignMatrix SignMatrix::standard() {
  IntMatrix4 e{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e[i][j] = (i == j) ? -1 : 1;
  return SignMatrix(e);
}

SignMatrix SignMatrix::transposed() const {
  IntMatrix4 t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i][j] = entries_[j][i];
  return SignMatrix(t);
}

bool is_hadamard(const SignMatrix& w) {
  const IntMatrix4 gram = multiply(w.transposed().entries(), w.entries());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (gram[i][j] != (i == j ? 4 : 0)) return false;
  return true;
}

MonomialMatrix MonomialMatrix::diagonal(const std::array<int, 4>& signs) {
  MonomialMatrix m;
  m.signs = signs;
  m.validate();
  return m;
}

MonomialMatrix MonomialMatrix::from_dense(const IntMatrix4& dense) {
  MonomialMatrix m;
  std::array<int, 4> col_count{};
  for (int r = 0; r < 4; ++r) {
    int found = -1;
    for (int c = 0; c < 4; ++c) {
      const int v = dense[r][c];
      if (v == 0) continue;
      if ((v != 1 && v != -1) || found >= 0)
        throw invalid_argument("matrix is not monomial (row " + std::to_string(r) + ")");
      found = c;
      m.signs[r] = v;
    }
    if (found < 0) throw invalid_argument("matrix is not monomial (empty row " + std::to_string(r) + ")");
    m.permutation[r] = found;
    ++col_count[found];
  }
  for (int c : col_count)
    if (c != 1) throw invalid_argument("matrix is not monomial (column multiplicity)");
  return m;
}

IntMatrix4 MonomialMatrix::dense() const {
  IntMatrix4 d{};
  for (int r = 0; r < 4; ++r) d[r][permutation[r]] = signs[r];
  return d;
}

MonomialMatrix MonomialMatrix::inverse() const {
  // Monomial matrices are orthogonal: the inverse is the transpose.
  MonomialMatrix inv;
  for (int r = 0; r < 4; ++r) {
    inv.permutation[permutation[r]] = r;
    inv.signs[permutation[r]] = signs[r];
  }
  return inv;
}

bool MonomialMatrix::is_diagonal() const {
  for (int r = 0; r < 4; ++r)
    if (permutation[r] != r) return false;
  return true;
}

void MonomialMatrix::validate() const {
  std::array<bool, 4> seen{};
  for (int r = 0; r < 4; ++r) {
    const int p = permutation[r];
    if (p < 0 || p > 3 || seen[p]) throw invalid_argument("monomial permutation is not a bijection");
    seen[p] = true;
    if (signs[r] != 1 && signs[r] != -1) throw invalid_argument("monomial signs must be +-1");
  }
}

MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b) {
  MonomialMatrix c;
  for (int n = 0; n < 4; ++n) {
    const int k = a.permutation[n];
    c.permutation[n] = b.permutation[k];
    c.signs[n] = a.signs[n] * b.signs[k];
  }
  return c;
}

AutomorphismPair AutomorphismPair::standard_example() {
  AutomorphismPair p;
  p.left.permutation = {1, 0, 3, 2};
  p.left.signs = {1, 1, -1, -1};
  p.right = MonomialMatrix::diagonal({-1, -1, 1, 1});
  return p;
}

AutomorphismPair compose(const AutomorphismPair& a, const AutomorphismPair& b) {
  return {a.left * b.left, a.right * b.right};
}

bool verify_automorphism(const SignMatrix& w, const AutomorphismPair& pair) {
  const IntMatrix4 lhs = multiply(multiply(pair.left.inverse().dense(), w.entries()), pair.right.dense());
  return lhs == w.entries();
}

std::vector<MonomialMatrix> all_monomial_matrices() {
  std::vector<MonomialMatrix> out;
  out.reserve(384);
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    for (int mask = 0; mask < 16; ++mask) {
      MonomialMatrix m;
      m.permutation = perm;
      for (int k = 0; k < 4; ++k) m.signs[k] = (mask >> (3 - k)) & 1 ? 1 : -1;
      out.push_back(m);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AutomorphismPair> enumerate_automorphism_pairs(const SignMatrix& w, RightFamily family) {
  const std::vector<MonomialMatrix> monomials = all_monomial_matrices();
  std::vector<MonomialMatrix> rights;
  if (family == RightFamily::Diagonal) {
    std::copy_if(monomials.begin(), monomials.end(), std::back_inserter(rights),
                 [](const MonomialMatrix& m) { return m.is_diagonal(); });
  } else {
    rights = monomials;
  }

  std::vector<AutomorphismPair> out;
  for (const auto& r : rights)
    for (const auto& l : monomials) {
      const AutomorphismPair pair{l, r};
      if (verify_automorphism(w, pair)) out.push_back(pair);
    }
  std::sort(out.begin(), out.end(), [](const AutomorphismPair& a, const AutomorphismPair& b) {
    return std::tie(a.right, a.left) < std::tie(b.right, b.left);
  });
  return out;
}

MonomialMatrix left_partner(const SignMatrix& w, const std::array<int, 4>& right_signs) {
  const MonomialMatrix r = MonomialMatrix::diagonal(right_signs);
  for (const auto& l : all_monomial_matrices())
    if (verify_automorphism(w, {l, r})) return l;
  throw invalid_argument("no monomial L pairs with the requested diagonal R");
}

std::vector<std::pair<double, int>> flat_band_spectrum(const SignMatrix& w, double merge_tol) {
  Eigen::Matrix<double, 8, 8> h = Eigen::Matrix<double, 8, 8>::Zero();
  for (int n = 0; n < 4; ++n)
    for (int i = 0; i < 4; ++i) {
      h(n, 4 + i) = w(n, i);
      h(4 + i, n) = w(n, i);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 8, 8>> solver(h, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();

  std::vector<std::pair<double, int>> grouped;
  for (int k = 0; k < 8; ++k) {
    if (!grouped.empty() && std::abs(ev(k) - grouped.back().first) <= merge_tol) {
      ++grouped.back().second;
    } else {
      grouped.emplace_back(ev(k), 1);
    }
  }
  return grouped;
}

}  // namespace cgs
