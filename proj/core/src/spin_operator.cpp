#include "cgs/spin_operator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <thread>

#include "cgs/error.hpp"

namespace cgs {

namespace {

inline double z_sign(std::uint64_t basis, std::uint32_t z) {
  return (std::popcount(basis & z) & 1) ? -1.0 : 1.0;
}

void require_spin(int spin, int n) {
  if (spin < 0 || spin >= n)
    throw invalid_argument("spin " + std::to_string(spin) + " out of range for " + std::to_string(n) +
                           " spins");
}

template <class F>
void parallel_rows(std::uint64_t rows, unsigned workers, F&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || rows < 4096) {
    body(std::uint64_t{0}, rows);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (rows + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(rows, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

PauliSum::PauliSum(int n_spins) : n_spins_(n_spins) {
  if (n_spins < 1) throw invalid_argument("need at least one spin");
  if (n_spins > kMaxSpins)
    throw size_guard(std::to_string(n_spins) + " spins exceed the limit of " +
                     std::to_string(kMaxSpins));
}

PauliSum& PauliSum::add(std::uint32_t x_mask, std::uint32_t z_mask, double coeff) {
  const std::uint64_t limit = dimension();
  if (x_mask >= limit || z_mask >= limit) throw invalid_argument("Pauli mask exceeds spin count");
  terms_.push_back({x_mask, z_mask, coeff});
  return *this;
}

PauliSum& PauliSum::add_x(int spin, double coeff) {
  require_spin(spin, n_spins_);
  return add(1u << spin, 0u, coeff);
}

PauliSum& PauliSum::add_z(int spin, double coeff) {
  require_spin(spin, n_spins_);
  return add(0u, 1u << spin, coeff);
}

PauliSum& PauliSum::add_xy_hopping(int a, int b, double coeff) {
  require_spin(a, n_spins_);
  require_spin(b, n_spins_);
  if (a == b) throw invalid_argument("hopping needs two distinct spins");
  const std::uint32_t m = (1u << a) | (1u << b);
  add(m, 0u, coeff);
  return add(m, m, -coeff);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_spins_ != n_spins_) throw invalid_argument("spin count mismatch in operator sum");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator*=(double s) {
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_spins_ != b.n_spins_) throw invalid_argument("spin count mismatch in operator product");
  PauliSum out(a.n_spins_);
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      // Z^{z1} X^{x2} = (-1)^{|z1 & x2|} X^{x2} Z^{z1}
      const double sign = (std::popcount(ta.z & tb.x) & 1) ? -1.0 : 1.0;
      out.terms_.push_back({ta.x ^ tb.x, ta.z ^ tb.z, sign * ta.coeff * tb.coeff});
    }
  return out.simplified();
}

PauliSum PauliSum::simplified(double tol) const {
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> acc;
  for (const auto& t : terms_) acc[{t.x, t.z}] += t.coeff;
  PauliSum out(n_spins_);
  for (const auto& [key, c] : acc)
    if (std::abs(c) > tol) out.terms_.push_back({key.first, key.second, c});
  return out;
}

double PauliSum::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& t : simplified().terms_) sum += t.coeff * t.coeff;
  return std::sqrt(sum * static_cast<double>(dimension()));
}

SparseMatrix PauliSum::to_sparse() const {
  const PauliSum s = simplified();
  // Group terms by X mask: each group contributes one entry per row.
  std::map<std::uint32_t, std::vector<const PauliTerm*>> groups;
  for (const auto& t : s.terms_) groups[t.x].push_back(&t);

  const auto dim = static_cast<Eigen::Index>(dimension());
  SparseMatrix m(dim, dim);
  m.reserve(Eigen::VectorXi::Constant(dim, static_cast<int>(groups.size())));
  std::vector<std::pair<std::uint64_t, double>> row;
  for (std::uint64_t r = 0; r < dimension(); ++r) {
    row.clear();
    for (const auto& [x, terms] : groups) {
      // <r| X^x Z^z |c> with c = r ^ x.
      const std::uint64_t c = r ^ x;
      double v = 0.0;
      for (const PauliTerm* t : terms) v += t->coeff * z_sign(c, t->z);
      if (v != 0.0) row.emplace_back(c, v);
    }
    std::sort(row.begin(), row.end());
    for (const auto& [c, v] : row)
      m.insert(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
  }
  m.makeCompressed();
  return m;
}

void PauliSum::apply(const double* in, double* out, unsigned workers) const {
  const PauliSum s = simplified();
  parallel_rows(dimension(), workers, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t r = lo; r < hi; ++r) {
      double acc = 0.0;
      for (const auto& t : s.terms_) {
        const std::uint64_t c = r ^ t.x;
        acc += t.coeff * z_sign(c, t.z) * in[c];
      }
      out[r] = acc;
    }
  });
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) { return (a * b - b * a).simplified(); }

SparseMatrix signed_permutation_matrix(
    int n_spins, const std::function<std::pair<std::uint64_t, double>(std::uint64_t)>& map) {
  if (n_spins < 1 || n_spins > kMaxSpins)
    throw size_guard("signed permutation on " + std::to_string(n_spins) + " spins");
  const std::uint64_t dim = std::uint64_t{1} << n_spins;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(dim);
  std::vector<std::uint8_t> hit(dim, 0);
  for (std::uint64_t b = 0; b < dim; ++b) {
    const auto [image, sign] = map(b);
    if (image >= dim || hit[image]) throw invalid_argument("basis map is not a bijection");
    hit[image] = 1;
    triplets.emplace_back(static_cast<int>(image), static_cast<int>(b), sign);
  }
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

double commutator_norm(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw invalid_argument("commutator needs square matrices of equal size");
  const SparseMatrix ab = a * b;
  const SparseMatrix ba = b * a;
  return SparseMatrix(ab - ba).norm();
}

double symmetry_defect(const SparseMatrix& a) {
  const SparseMatrix t = a.transpose();
  const SparseMatrix d = a - t;
  double worst = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

void sparse_matvec(const SparseMatrix& a, const double* x, double* y, unsigned workers) {
  const auto* outer = a.outerIndexPtr();
  const auto* inner = a.innerIndexPtr();
  const double* values = a.valuePtr();
  const bool compressed = a.isCompressed();
  const auto* nnz = a.innerNonZeroPtr();
  parallel_rows(static_cast<std::uint64_t>(a.rows()), workers, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t r = lo; r < hi; ++r) {
      const auto begin = outer[r];
      const auto end = compressed ? outer[r + 1] : begin + nnz[r];
      double acc = 0.0;
      for (auto k = begin; k < end; ++k) acc += values[k] * x[inner[k]];
      y[r] = acc;
    }
  });
}

}  // namespace cgs
