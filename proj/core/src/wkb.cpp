#include "cgs/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cgs/error.hpp"

namespace cgs {

void WkbParams::validate() const {
  if (!(J > 0.0) || !std::isfinite(J)) throw invalid_argument("J must be finite and > 0");
  if (!(C > 0.0) || !std::isfinite(C)) throw invalid_argument("C must be finite and > 0");
  if (!(K > 0.0) || !std::isfinite(K)) throw invalid_argument("K must be finite and > 0");
  if (!std::isfinite(k)) throw invalid_argument("k must be finite");
}

double wkb_flip_amplitude(const WkbParams& p) {
  p.validate();
  const double jc = p.JC();
  return p.J * std::pow(jc, -p.k) * std::exp(-p.K * std::pow(jc, 0.25));
}

double characteristic_frequency(double J, double C) {
  if (!(J > 0.0) || !(C > 0.0)) throw invalid_argument("J and C must be > 0");
  return std::sqrt(J / C);
}

double wkb_turnover(const WkbParams& p) {
  p.validate();
  // d/dx ln f = -k/x - K/(4 x^{3/4}) vanishes at x^{1/4} = -4k/K.
  if (p.k >= 0.0) return 0.0;
  return std::pow(-4.0 * p.k / p.K, 4.0);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw invalid_argument("log grid needs 0 < lo < hi and n >= 2");
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

ScalingProbe scaling_probe(const std::vector<double>& jc, const std::vector<double>& lambda_over_J,
                           double k) {
  if (jc.size() != lambda_over_J.size() || jc.size() < 3)
    throw invalid_argument("scaling probe needs at least 3 matching (JC, lambda) points");
  const auto [lo, hi] = std::minmax_element(jc.begin(), jc.end());
  if (!(*lo > 0.0) || *hi / *lo < 1e3 * (1.0 - 1e-12))
    throw invalid_argument("JC grid must be positive and span at least three decades");

  std::vector<double> x, y;
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const double reduced = lambda_over_J[i] * std::pow(jc[i], k);
    if (!(reduced > 0.0 && reduced < 1.0))
      throw invalid_argument("lambda/(J (JC)^-k) must lie in (0, 1) at JC = " + std::to_string(jc[i]));
    x.push_back(std::log(jc[i]));
    y.push_back(std::log(-std::log(reduced)));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  ScalingProbe r;
  r.exponent = sxy / sxx;
  const double intercept = my - r.exponent * mx;
  r.prefactor = std::exp(intercept);
  for (std::size_t i = 0; i < x.size(); ++i)
    r.max_residual = std::max(r.max_residual, std::abs(y[i] - intercept - r.exponent * x[i]));
  r.jc = jc;
  r.lambda_over_J = lambda_over_J;
  return r;
}

ScalingProbe scaling_probe(const WkbParams& base, const std::vector<double>& jc) {
  base.validate();
  std::vector<double> lam;
  for (double v : jc) {
    WkbParams p = base;
    p.C = v / base.J;
    lam.push_back(wkb_flip_amplitude(p) / base.J);
  }
  return scaling_probe(jc, lam, base.k);
}

}  // namespace cgs
