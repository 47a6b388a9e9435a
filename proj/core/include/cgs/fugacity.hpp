#pragma once

// Partition function of a single closed loop of continuous phases coupled by
// e^{-K[1 - cos(theta_i - theta_{i+1})]}, and its large-K fugacity form.

#include <cstdint>

namespace cgs {

enum class QuadratureMethod { Auto, Nested, MonteCarlo };

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::Auto;
  /// Relative tolerance per nesting level.
  double rel_tol = 1e-9;
  unsigned max_depth = 20;
  std::uint64_t mc_samples = 2'000'000;
  std::uint64_t seed = 1;
};

inline constexpr int kMaxNestedLoopLength = 6;

struct FugacityResult {
  int p = 0;
  double K = 0.0;
  double value = 0.0;
  /// Absolute error estimate (quadrature) or one standard error (Monte Carlo).
  double error = 0.0;
  bool converged = true;
  QuadratureMethod method = QuadratureMethod::Nested;
  /// (2 pi K)^{-(p-1)/2}; one power of sqrt(2 pi K) per loop survives.
  double asymptote = 0.0;
  /// value / asymptote.
  double ratio = 0.0;
  /// ratio * sqrt(p): the Gaussian cycle determinant adds 1/sqrt(p).
  double cycle_corrected_ratio = 0.0;
};

/// Z_C = int prod_i dtheta_i/2pi prod_i e^{-K[1 - cos(theta_i - theta_{i+1})]}
/// for a loop of length p >= 3 and stiffness K >= 0. Auto uses nested
/// adaptive Gauss-Kronrod up to kMaxNestedLoopLength and Monte Carlo above.
FugacityResult fugacity_integral(int p, double K, const QuadratureSpec& spec = {});

/// lambda = sqrt(2 pi K).
double loop_fugacity(double K);

}  // namespace cgs
