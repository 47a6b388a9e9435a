#pragma once

// Lowest eigenvalues of real symmetric operators. Small matrices go through
// a dense solver; larger ones through a restarted block Krylov iteration
// with full reorthogonalization. The block is wider than the number of
// requested values, so degenerate levels come out with their multiplicity.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cgs/spin_operator.hpp"

namespace cgs {

struct EigenOptions {
  std::size_t n_low = 6;
  /// Residual tolerance relative to the spectral scale of the operator.
  double tol = 1e-10;
  std::size_t max_restarts = 300;
  /// Krylov basis size per restart cycle; 0 picks a size from the dimension.
  std::size_t basis_size = 0;
  /// Matrices up to this dimension are diagonalized densely.
  std::size_t dense_limit = 4096;
  std::uint64_t seed = 7;
  unsigned workers = 1;
};

struct EigenResult {
  std::vector<double> values;  // ascending
  std::vector<double> residuals;
  std::size_t iterations = 0;
  bool converged = false;
  std::string method;
};

using MatVec = std::function<void(const double* in, double* out)>;

/// Throws a numeric error listing residual norms when the iteration does
/// not converge, and an invalid-argument error for a non-symmetric input.
EigenResult exact_diagonalize(const SparseMatrix& h, const EigenOptions& options = {});

/// Every eigenvalue of a dense-sized matrix.
std::vector<double> full_spectrum(const SparseMatrix& h);

/// Block Krylov on a matrix-free operator. Does not throw on
/// non-convergence; inspect `converged` and `residuals`.
EigenResult krylov_lowest(const MatVec& op, std::size_t dimension, const EigenOptions& options);

struct SpectrumLevel {
  double energy = 0.0;
  std::uint64_t degeneracy = 0;
};

/// Groups ascending values whose spread is below `tol` (absolute).
std::vector<SpectrumLevel> group_levels(const std::vector<double>& ascending, double tol = 1e-8);

}  // namespace cgs
