#include "cgs/squid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include "cgs/error.hpp"

namespace cgs {

namespace {

constexpr double kTwoPiS = 2.0 * std::numbers::pi;

// Maps a flux in units of Phi_0 into (-1/2, 1/2].
double wrap_flux(double f) {
  double r = f - std::floor(f + 0.5);
  if (r <= -0.5) r += 1.0;
  return r;
}

struct ArmMinimum {
  double phi = 0.0;
  double energy = 0.0;
  double gradient = 0.0;
};

// min over phi of -A cos(x - phi) + phi^2 / (2 e).
ArmMinimum minimize_arm(double A, double x, double e) {
  if (e == 0.0 || A == 0.0) return {0.0, -A * std::cos(x), 0.0};
  auto f = [&](double phi) { return -A * std::cos(x - phi) + phi * phi / (2.0 * e); };
  auto df = [&](double phi) { return -A * std::sin(x - phi) + phi / e; };
  auto d2f = [&](double phi) { return A * std::cos(x - phi) + 1.0 / e; };

  // Every stationary point satisfies |phi| <= e A.
  const double bound = e * A;
  std::vector<double> starts;
  if (e * A < 1.0) {
    starts.push_back(e * A * std::sin(x) / (1.0 + e * A * std::cos(x)));
  } else {
    const int n = 400 + static_cast<int>(std::ceil(8.0 * bound));
    double best = f(-bound);
    double arg = -bound;
    for (int i = 1; i <= n; ++i) {
      const double phi = -bound + 2.0 * bound * i / n;
      const double v = f(phi);
      if (v < best) {
        best = v;
        arg = phi;
      }
    }
    starts.push_back(arg);
  }

  ArmMinimum best{0.0, std::numeric_limits<double>::infinity(), 0.0};
  for (double phi : starts) {
    double lo = -bound, hi = bound;
    for (int it = 0; it < 100; ++it) {
      const double g = df(phi);
      const double h = d2f(phi);
      double next = h > 0.0 ? phi - g / h : phi - std::copysign(0.1 * bound, g);
      if (e * A < 1.0) {
        // f' is increasing: keep a bisection bracket.
        if (g > 0.0) hi = std::min(hi, phi);
        else lo = std::max(lo, phi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      }
      if (std::abs(next - phi) <= 1e-16 * std::max(1.0, std::abs(phi))) {
        phi = next;
        break;
      }
      phi = next;
    }
    const double v = f(phi);
    if (v < best.energy) best = {phi, v, std::abs(df(phi))};
  }
  return best;
}

}  // namespace

void SquidParams::validate() const {
  if (!(J_w > 0.0) || !std::isfinite(J_w)) throw invalid_argument("J_w must be finite and > 0");
  if (!(J_t >= 0.0) || !(J_t < J_w)) throw invalid_argument("J_t must satisfy 0 <= J_t < J_w");
  if (!(e_LJ >= 0.0) || !std::isfinite(e_LJ)) throw invalid_argument("e_LJ must be finite and >= 0");
  if (!std::isfinite(Phi_w) || !std::isfinite(Phi_t)) throw invalid_argument("fluxes must be finite");
}

double e_lj_from_inductance(double L_arm, double J_w_joules) {
  if (!(L_arm >= 0.0) || !(J_w_joules > 0.0)) throw invalid_argument("need L >= 0 and J_w > 0");
  const double phi0 = units::kFluxQuantum;
  return 4.0 * std::numbers::pi * std::numbers::pi * L_arm * J_w_joules / (phi0 * phi0);
}

SquidPotential squid_potential_exact(double delta, const SquidParams& p) {
  p.validate();
  // In units of J_w: -cos(x_w - phi_ow) - d cos(x_t - phi_ot) + (phi_ow^2 + phi_ot^2) / (2 e).
  const double xw = delta + kTwoPiS * p.Phi_w;
  const double xt = delta + kTwoPiS * p.Phi_t;
  const ArmMinimum w = minimize_arm(1.0, xw, p.e_LJ);
  const ArmMinimum t = minimize_arm(p.d_J(), xt, p.e_LJ);
  SquidPotential r;
  r.energy = p.J_w * (w.energy + t.energy);
  r.phi_ow = w.phi;
  r.phi_ot = t.phi;
  r.gradient = std::max(w.gradient, t.gradient);
  const double scale = p.e_LJ > 0.0 ? 1.0 / p.e_LJ : 1.0;
  if (!std::isfinite(r.energy) || r.gradient > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "oscillator minimization did not converge at delta = " << delta
        << " (residual gradient " << r.gradient << ")";
    throw numeric_failure(msg.str());
  }
  return r;
}

Phasor squid_effective_phasor(const SquidParams& p) {
  p.validate();
  const std::complex<double> z =
      p.J_w * std::polar(1.0, kTwoPiS * p.Phi_w) + p.J_t * std::polar(1.0, kTwoPiS * p.Phi_t);
  Phasor r;
  r.J_eff = std::abs(z);
  r.well_conditioned = r.J_eff > kPhasorThreshold * p.J_w;
  r.Phi_tot = r.well_conditioned ? wrap_flux(std::arg(z) / kTwoPiS) : 0.0;
  return r;
}

double HarmonicExpansion::value(double delta, const SquidParams& p) const {
  const double a = delta + kTwoPiS * p.Phi_w;
  const double b = delta + kTwoPiS * p.Phi_t;
  return p.J_w * (c1 * std::cos(a) + c_d * std::cos(b) + c2 * std::cos(2.0 * a) + c3 * std::cos(3.0 * a));
}

HarmonicExpansion squid_harmonic_expansion(const SquidParams& p) {
  p.validate();
  if (p.e_LJ > kMaxSeriesELJ)
    throw invalid_argument("harmonic expansion requires e_LJ <= 0.3, got " + std::to_string(p.e_LJ));
  const double e = p.e_LJ;
  return {-(1.0 - e * e / 8.0), -p.d_J(), e / 4.0, -e * e / 8.0};
}

bool calibration_feasible(const JunctionTarget& t, double d_J) {
  return std::abs(t.J_w_actual - t.J_target) <= d_J * t.J_w_actual * (1.0 + 1e-14);
}

std::vector<Calibration> calibrate_fluxes(const std::vector<JunctionTarget>& targets, double d_J) {
  if (!(d_J > 0.0 && d_J < 1.0)) throw invalid_argument("d_J must lie in (0, 1)");
  std::ostringstream infeasible;
  for (const auto& t : targets) {
    if (t.sign != 1 && t.sign != -1)
      throw invalid_argument("junction '" + t.name + "': sign must be +1 or -1");
    if (!(t.J_target > 0.0) || !(t.J_w_actual > 0.0))
      throw invalid_argument("junction '" + t.name + "': energies must be > 0");
    if (!calibration_feasible(t, d_J))
      infeasible << " " << t.name << " (|J_w - J_target| = " << std::abs(t.J_w_actual - t.J_target)
                 << " > d_J J_w = " << d_J * t.J_w_actual << ")";
  }
  if (!infeasible.str().empty())
    throw invalid_argument("infeasible junctions:" + infeasible.str());

  std::vector<Calibration> out;
  for (const auto& t : targets) {
    const double T = t.J_target, Jw = t.J_w_actual, Jt = d_J * Jw;
    // J_w e^{ia} + J_t e^{ib} = T: |T - J_w e^{ia}| = J_t fixes cos a.
    const double num = T * T + Jw * Jw - Jt * Jt;
    const double den = 2.0 * T * Jw;
    const double a0 = std::atan2(std::sqrt(std::max(0.0, den * den - num * num)), num);
    Calibration best;
    bool have = false;
    for (double a : {a0, -a0}) {
      const double b = std::arg(std::complex<double>(T, 0.0) - Jw * std::polar(1.0, a));
      double pw = a / kTwoPiS, pt = b / kTwoPiS;
      if (t.sign < 0) {
        pw += 0.5;
        pt += 0.5;
      }
      pw = wrap_flux(pw);
      pt = wrap_flux(pt);
      const auto key = std::make_tuple(std::abs(pt), std::abs(pw), -pw);
      const auto best_key = std::make_tuple(std::abs(best.Phi_t), std::abs(best.Phi_w), -best.Phi_w);
      if (!have || key < best_key) {
        best.Phi_w = pw;
        best.Phi_t = pt;
        have = true;
      }
    }
    best.name = t.name;
    best.J_t = Jt;
    const Phasor ph = squid_effective_phasor({Jw, Jt, best.Phi_w, best.Phi_t, 0.0});
    best.J_eff = ph.J_eff;
    best.Phi_tot = ph.Phi_tot;
    best.relative_error = std::abs(ph.J_eff - T) / T;
    out.push_back(best);
  }
  return out;
}

}  // namespace cgs
