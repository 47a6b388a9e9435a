#pragma once

// Flip amplitude from dimensional confinement,
//   lambda_flip ~ J (JC)^{-k} exp(-K (JC)^{1/4}),
// and a probe that recovers the 1/4 exponent from data.

#include <vector>

namespace cgs {

struct WkbParams {
  double J = 1.0;
  /// Effective capacitance in units where JC is dimensionless.
  double C = 1.0;
  double k = 1.0;
  double K = 1.0;

  double JC() const { return J * C; }
  void validate() const;
};

double wkb_flip_amplitude(const WkbParams& p);

/// omega = sqrt(J / C).
double characteristic_frequency(double J, double C);

/// JC at which lambda_flip peaks; 0 when it decreases for all JC (k >= 0).
double wkb_turnover(const WkbParams& p);

/// n points spaced evenly in log between lo and hi.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

struct ScalingProbe {
  double exponent = 0.0;
  double prefactor = 0.0;  // exp(intercept): the fitted K
  double max_residual = 0.0;
  std::vector<double> jc;
  std::vector<double> lambda_over_J;
};

/// Least-squares slope of ln(-ln(lambda/(J (JC)^{-k}))) against ln(JC).
/// The grid must span at least three decades.
ScalingProbe scaling_probe(const std::vector<double>& jc, const std::vector<double>& lambda_over_J,
                           double k);

/// Probe on data generated from the closed form at fixed J, k, K.
ScalingProbe scaling_probe(const WkbParams& base, const std::vector<double>& jc);

}  // namespace cgs
