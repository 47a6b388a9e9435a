#include "cgs/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cgs/error.hpp"
#include "cgs/rng.hpp"

namespace cgs {

namespace {

// Makes columns [first, first + count) of `v` orthonormal to columns
// [0, first) and to each other: two block Gram-Schmidt passes, then a
// column sweep inside the block. Rank-deficient columns are replaced by
// random directions. Returns the number of replaced columns.
int orthonormalize_block(Eigen::MatrixXd& v, Eigen::Index first, Eigen::Index count, CounterRng& rng);

void fill_random(Eigen::Ref<Eigen::VectorXd> col, CounterRng& rng) {
  for (Eigen::Index i = 0; i < col.size(); ++i) col[i] = rng.uniform() - 0.5;
}

int orthonormalize_block(Eigen::MatrixXd& v, Eigen::Index first, Eigen::Index count, CounterRng& rng) {
  int replaced = 0;
  auto blk = v.middleCols(first, count);
  const Eigen::VectorXd before = blk.colwise().norm().transpose();
  for (int pass = 0; pass < 2 && first > 0; ++pass) {
    const Eigen::MatrixXd coeffs = v.leftCols(first).transpose() * blk;
    blk.noalias() -= v.leftCols(first) * coeffs;
  }
  for (Eigen::Index j = 0; j < count; ++j) {
    auto col = v.col(first + j);
    for (int attempt = 0;; ++attempt) {
      const double ref = attempt == 0 ? std::max(before[j], 1.0) : col.norm();
      // The block passes already cleared [0, first); a random
      // replacement needs the full sweep.
      const Eigen::Index from = attempt == 0 ? first : 0;
      const Eigen::Index len = first + j - from;
      for (int pass = 0; pass < 2 && len > 0; ++pass) {
        const Eigen::VectorXd c = v.middleCols(from, len).transpose() * col;
        col.noalias() -= v.middleCols(from, len) * c;
      }
      const double n = col.norm();
      if (n > 1e-10 * ref) {
        col /= n;
        break;
      }
      if (attempt > 8) throw numeric_failure("cannot extend the Krylov basis");
      fill_random(col, rng);
      ++replaced;
    }
  }
  return replaced;
}

}  // namespace

std::vector<double> full_spectrum(const SparseMatrix& h) {
  if (h.rows() != h.cols()) throw invalid_argument("matrix is not square");
  if (static_cast<std::size_t>(h.rows()) > 8192)
    throw size_guard("dense diagonalization limited to dimension 8192");
  const Eigen::MatrixXd dense = Eigen::MatrixXd(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw numeric_failure("dense eigensolver failed");
  const Eigen::VectorXd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

EigenResult krylov_lowest(const MatVec& op, std::size_t dimension, const EigenOptions& options) {
  if (options.n_low == 0) throw invalid_argument("n_low must be > 0");
  if (options.n_low > dimension) throw invalid_argument("n_low exceeds the matrix dimension");
  const auto n = static_cast<Eigen::Index>(dimension);
  const Eigen::Index block =
      std::min<Eigen::Index>(n, static_cast<Eigen::Index>(options.n_low) + 3);
  Eigen::Index basis = static_cast<Eigen::Index>(options.basis_size);
  if (basis == 0) {
    // Two n x basis arrays; stay near 256 MiB.
    const Eigen::Index by_memory = static_cast<Eigen::Index>((std::size_t{1} << 24) / dimension);
    basis = std::clamp<Eigen::Index>(by_memory, 4 * block, 160);
  }
  basis = std::min(basis, n);
  basis = std::max(basis, std::min(n, 2 * block));

  // Whole number of blocks per cycle.
  basis = std::max(block, basis / block * block);
  const double bytes = 2.0 * 8.0 * static_cast<double>(n) * static_cast<double>(basis);
  if (bytes > 4.0 * (1ull << 30))
    throw size_guard("Krylov basis needs " + std::to_string(bytes / (1ull << 30)) + " GiB, limit 4 GiB");

  CounterRng rng(options.seed, 0xE16E);
  Eigen::MatrixXd v(n, basis);
  Eigen::MatrixXd hv(n, basis);
  Eigen::MatrixXd x(n, block);
  for (Eigen::Index j = 0; j < block; ++j) fill_random(x.col(j), rng);

  EigenResult result;
  result.method = "block-krylov";
  Eigen::VectorXd ritz;
  std::vector<double> residuals(static_cast<std::size_t>(block), 0.0);
  for (std::size_t cycle = 0; cycle < options.max_restarts; ++cycle) {
    result.iterations = cycle + 1;
    v.leftCols(block) = x;
    orthonormalize_block(v, 0, block, rng);
    Eigen::Index filled = block;
    for (Eigen::Index k = 0;; k += block) {
      for (Eigen::Index j = k; j < k + block; ++j) op(v.col(j).data(), hv.col(j).data());
      if (filled + block > basis) break;
      v.middleCols(filled, block) = hv.middleCols(k, block);
      orthonormalize_block(v, filled, block, rng);
      filled += block;
    }
    const Eigen::Index m = filled;
    Eigen::MatrixXd t = v.leftCols(m).transpose() * hv.leftCols(m);
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
    if (small.info() != Eigen::Success) throw numeric_failure("projected eigenproblem failed");
    ritz = small.eigenvalues();
    const Eigen::MatrixXd y = small.eigenvectors().leftCols(block);
    x = v.leftCols(m) * y;
    const Eigen::MatrixXd hx = hv.leftCols(m) * y;

    const double scale = std::max({1.0, std::abs(ritz[0]), std::abs(ritz[m - 1])});
    bool done = true;
    for (Eigen::Index k = 0; k < block; ++k) {
      residuals[static_cast<std::size_t>(k)] = (hx.col(k) - ritz[k] * x.col(k)).norm();
      if (k < static_cast<Eigen::Index>(options.n_low) &&
          residuals[static_cast<std::size_t>(k)] > options.tol * scale)
        done = false;
    }
    if (done || m == n) {
      result.converged = true;
      break;
    }
  }
  result.values.assign(ritz.data(), ritz.data() + options.n_low);
  result.residuals.assign(residuals.begin(), residuals.begin() + static_cast<long>(options.n_low));
  return result;
}

EigenResult exact_diagonalize(const SparseMatrix& h, const EigenOptions& options) {
  if (h.rows() != h.cols()) throw invalid_argument("matrix is not square");
  if (symmetry_defect(h) > 1e-12) throw invalid_argument("matrix is not symmetric");
  const auto dim = static_cast<std::size_t>(h.rows());
  if (options.n_low == 0 || options.n_low > dim)
    throw invalid_argument("n_low must lie in [1, " + std::to_string(dim) + "]");

  if (dim <= options.dense_limit) {
    EigenResult r;
    r.method = "dense";
    std::vector<double> all = full_spectrum(h);
    r.values.assign(all.begin(), all.begin() + static_cast<long>(options.n_low));
    r.residuals.assign(options.n_low, 0.0);
    r.iterations = 1;
    r.converged = true;
    return r;
  }
  const unsigned workers = options.workers;
  EigenResult r = krylov_lowest(
      [&h, workers](const double* in, double* out) { sparse_matvec(h, in, out, workers); }, dim,
      options);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "eigensolver did not converge after " << r.iterations << " restarts; residual norms:";
    for (double res : r.residuals) msg << ' ' << res;
    throw numeric_failure(msg.str());
  }
  return r;
}

std::vector<SpectrumLevel> group_levels(const std::vector<double>& ascending, double tol) {
  std::vector<SpectrumLevel> out;
  for (double v : ascending) {
    if (!out.empty() && std::abs(v - out.back().energy) <= tol) {
      ++out.back().degeneracy;
    } else {
      out.push_back({v, 1});
    }
  }
  return out;
}

}  // namespace cgs
