#include "cgs/fugacity.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "cgs/error.hpp"
#include "cgs/phase_config.hpp"
#include "cgs/rng.hpp"

namespace cgs {

namespace {

// e^{-x} I_0(x) without overflow.
double scaled_bessel_i0(double x) {
  if (x < 700.0) return std::exp(-x) * std::cyl_bessel_i(0.0, x);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 30 && term > 1e-17 * sum; ++k) {
    term *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    sum += term;
  }
  return sum / std::sqrt(kTwoPi * x);
}

// Integrates over the p-1 independent bond differences u_k; the closing
// bond carries -sum(u). theta_1 drops out by translation invariance. The
// last open bond and the closing bond are done in closed form,
//   int du/2pi e^{-K(1-cos u)} e^{-K(1-cos(a+u))} = e^{-2K} I_0(2K |cos(a/2)|),
// and every other bond is cut where its own weight falls below e^{-60}.
class NestedLoopIntegral {
 public:
  NestedLoopIntegral(int p, double K, const QuadratureSpec& spec) : p_(p), K_(K), spec_(spec) {
    const double c = 1.0 - kBondCut / K_;
    cut_ = c <= -1.0 ? kPi : std::acos(c);
  }

  double run(double* error) {
    double err = 0.0;
    const double v = level(0, 0.0, &err);
    *error = err;
    return v;
  }

 private:
  static constexpr double kBondCut = 60.0;

  double bond(double u) const { return std::exp(-K_ * (1.0 - std::cos(u))); }

  double closing_pair(double a) const {
    const double x = 2.0 * K_ * std::abs(std::cos(0.5 * a));
    return std::exp(x - 2.0 * K_) * scaled_bessel_i0(x);
  }

  double level(int depth, double partial, double* error) {
    using boost::math::quadrature::gauss_kronrod;
    if (depth == p_ - 2) return closing_pair(partial);
    const auto integrand = [this, depth, partial](double u) {
      double ignored = 0.0;
      return bond(u) * level(depth + 1, partial + u, &ignored) / kTwoPi;
    };
    double err = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(integrand, -cut_, cut_, spec_.max_depth,
                                                          spec_.rel_tol, &err);
    if (error) *error = err;
    return v;
  }

  int p_;
  double K_;
  double cut_ = kPi;
  QuadratureSpec spec_;
};

// Best-Fisher rejection sampler for the von Mises distribution on (-pi, pi].
double sample_von_mises(double kappa, CounterRng& rng) {
  if (kappa < 1e-8) return kPi * (2.0 * rng.uniform() - 1.0);
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  for (;;) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform_open();
    const double u3 = rng.uniform();
    const double z = std::cos(kPi * u1);
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double angle = std::acos(std::clamp(f, -1.0, 1.0));
      return u3 > 0.5 ? angle : -angle;
    }
  }
}

// Samples the p-1 open bonds from their own Boltzmann factor; the estimator
// averages the closing bond.
double monte_carlo_loop(int p, double K, const QuadratureSpec& spec, double* error) {
  CounterRng rng(spec.seed, /*stream=*/0xF0CA);
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t k = 0; k < spec.mc_samples; ++k) {
    double sum = 0.0;
    for (int b = 0; b < p - 1; ++b) sum += sample_von_mises(K, rng);
    const double x = std::exp(-K * (1.0 - std::cos(sum)));
    const double delta = x - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (x - mean);
  }
  // Normalization of each sampled bond: int du/2pi e^{-K(1-cos u)} = e^{-K} I_0(K).
  const double norm = std::pow(std::exp(-K) * std::cyl_bessel_i(0.0, K), p - 1);
  const double n = static_cast<double>(spec.mc_samples);
  *error = norm * std::sqrt(m2 / (n - 1.0) / n);
  return norm * mean;
}

}  // namespace

double loop_fugacity(double K) {
  if (K < 0.0) throw invalid_argument("stiffness K must be >= 0");
  return std::sqrt(kTwoPi * K);
}

FugacityResult fugacity_integral(int p, double K, const QuadratureSpec& spec) {
  if (p < 3) throw invalid_argument("loop length p must be >= 3, got " + std::to_string(p));
  if (!(K >= 0.0) || !std::isfinite(K)) throw invalid_argument("stiffness K must be finite and >= 0");
  if (K > 700.0) throw invalid_argument("stiffness K above 700 overflows the bond normalization");

  QuadratureMethod method = spec.method;
  if (method == QuadratureMethod::Auto)
    method = p <= kMaxNestedLoopLength ? QuadratureMethod::Nested : QuadratureMethod::MonteCarlo;
  if (method == QuadratureMethod::Nested && p > kMaxNestedLoopLength)
    throw size_guard("nested quadrature supports p <= " + std::to_string(kMaxNestedLoopLength) +
                     "; use Monte Carlo");
  if (method == QuadratureMethod::MonteCarlo && spec.mc_samples < 2)
    throw invalid_argument("Monte Carlo integration needs at least 2 samples");

  FugacityResult r;
  r.p = p;
  r.K = K;
  r.method = method;
  if (K == 0.0) {
    r.value = 1.0;
    r.error = 0.0;
  } else if (method == QuadratureMethod::Nested) {
    NestedLoopIntegral integral(p, K, spec);
    r.value = integral.run(&r.error);
    r.converged = r.error <= 100.0 * spec.rel_tol * std::abs(r.value);
  } else {
    r.value = monte_carlo_loop(p, K, spec, &r.error);
    r.converged = r.error <= 0.05 * std::abs(r.value);
  }
  if (!std::isfinite(r.value)) throw numeric_failure("loop integral is not finite");

  r.asymptote = K > 0.0 ? std::pow(kTwoPi * K, -(p - 1) / 2.0) : 1.0;
  r.ratio = r.value / r.asymptote;
  r.cycle_corrected_ratio = r.ratio * std::sqrt(static_cast<double>(p));
  return r;
}

}  // namespace cgs
