#include "cgs/classical.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <string>

#include "cgs/error.hpp"

namespace cgs {

namespace {

std::complex<double> row_phasor(const SitePhases& theta, const SignMatrix& w, int n) {
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i < 4; ++i) acc += static_cast<double>(w(n, i)) * std::polar(1.0, theta[i]);
  return acc;
}

constexpr int kPairs[3][2][2] = {
    {{0, 1}, {2, 3}},
    {{0, 2}, {1, 3}},
    {{0, 3}, {1, 2}},
};

// Ground-state check used by the path scans.
void require_ground_state(const PhaseConfig& config, const CouplingParams& params,
                          const LatticeGeometry& g) {
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const SitePhases theta = config.site_theta(g, SiteIndex(s));
    const double e = site_min_energy(theta, params);
    if (std::abs(e + 8.0 * params.J) > 1e-9 * params.J || !is_min_manifold(theta).on_manifold)
      throw invalid_argument("configuration is not in the ground-state manifold (site " +
                             std::to_string(s) + ", E_min = " + std::to_string(e) + ")");
  }
}

}  // namespace

void CouplingParams::validate() const {
  if (!(J > 0.0) || !std::isfinite(J)) throw invalid_argument("coupling J must be finite and > 0");
  if (!is_hadamard(W)) throw invalid_argument("coupling matrix W is not Hadamard");
}

double site_josephson_energy(const SitePhases& theta, const SitePhases& phi, const CouplingParams& p) {
  double acc = 0.0;
  for (int n = 0; n < 4; ++n)
    for (int i = 0; i < 4; ++i) acc += p.W(n, i) * std::cos(phi[n] - theta[i]);
  return -p.J * acc;
}

double josephson_energy(const PhaseConfig& config, const CouplingParams& params,
                        const LatticeGeometry& g) {
  config.require_covers(g);
  double total = 0.0;
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const SiteIndex site(s);
    total += site_josephson_energy(config.site_theta(g, site), config.site_phi(g, site), params);
  }
  return total;
}

TetherResult tether_matter_phases(const SitePhases& theta, const SignMatrix& w, double eps) {
  TetherResult r;
  for (int n = 0; n < 4; ++n) {
    const std::complex<double> v = row_phasor(theta, w, n);
    r.magnitude[n] = std::abs(v);
    r.defined[n] = r.magnitude[n] > eps;
    r.phi[n] = r.defined[n] ? canonical_phase(std::arg(v)) : 0.0;
  }
  return r;
}

std::size_t tether_all(PhaseConfig& config, const SignMatrix& w, const LatticeGeometry& g) {
  config.require_covers(g);
  std::size_t undefined = 0;
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const SiteIndex site(s);
    const TetherResult t = tether_matter_phases(config.site_theta(g, site), w);
    for (bool d : t.defined) undefined += d ? 0 : 1;
    config.set_site_phi(g, site, t.phi);
  }
  return undefined;
}

double site_min_energy(const SitePhases& theta, const CouplingParams& params) {
  double acc = 0.0;
  for (int n = 0; n < 4; ++n) acc += std::abs(row_phasor(theta, params.W, n));
  return -params.J * acc;
}

double pairing_mismatch(const SitePhases& theta, Pairing p) {
  const auto& pairs = kPairs[static_cast<int>(p)];
  double worst = 0.0;
  for (const auto& pr : pairs)
    worst = std::max(worst, std::abs(angle_difference(theta[pr[0]], theta[pr[1]], kPi)));
  // The two pi offsets must agree: an odd number leaves a wire with zero phasor.
  const double d0 = theta[pairs[0][0]] - theta[pairs[0][1]];
  const double d1 = theta[pairs[1][0]] - theta[pairs[1][1]];
  return std::max(worst, std::abs(angle_difference(d0, d1)));
}

ManifoldCheck is_min_manifold(const SitePhases& theta, double tol) {
  if (!(tol > 0.0)) throw invalid_argument("pairing tolerance must be > 0");
  ManifoldCheck out;
  for (const Pairing p : kAllPairings)
    if (pairing_mismatch(theta, p) <= tol) out.pairings.push_back(p);
  out.on_manifold = !out.pairings.empty();
  return out;
}

PairingConfig detect_pairings(const PhaseConfig& config, const LatticeGeometry& g, double tol) {
  PairingConfig pc;
  pc.pairing.resize(g.num_sites());
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const ManifoldCheck m = is_min_manifold(config.site_theta(g, SiteIndex(s)), tol);
    if (!m.on_manifold)
      throw invalid_argument("site " + std::to_string(s) + " is not pairwise equal modulo pi");
    pc.pairing[s] = m.pairings.front();
  }
  return pc;
}

FlipPathResult flip_path_energy(const PhaseConfig& config, const CouplingParams& params,
                                const LatticeGeometry& g, PlaquetteIndex p, FlipPath path,
                                int n_steps) {
  config.require_covers(g);
  g.check(p);
  if (n_steps < 1) throw invalid_argument("flip path needs n_steps >= 1");
  require_ground_state(config, params, g);

  const auto edges = g.plaquette_links(p);
  FlipPathResult result;
  PhaseConfig work = config;
  tether_all(work, params.W, g);
  const double e0 = josephson_energy(work, params, g);
  int step = 0;

  auto record = [&](double delta_theta) {
    tether_all(work, params.W, g);
    const double e = josephson_energy(work, params, g);
    result.samples.push_back({step++, delta_theta, e});
    result.max_excursion = std::max(result.max_excursion, std::abs(e - e0));
  };
  auto ramp_plaquette = [&](const PhaseConfig& base) {
    for (int k = 0; k <= n_steps; ++k) {
      const double shift = kPi * k / n_steps;
      work.theta = base.theta;
      for (const LinkIndex l : edges) work.theta[l.value] += shift;
      record(shift);
    }
  };

  if (path == FlipPath::Direct) {
    ramp_plaquette(config);
  } else {
    // Merge every loop touching the plaquette onto the phase of the bottom
    // edge, flip, then undo the merge.
    const LoopCovering cover = loops_from_pairing(detect_pairings(config, g), g);
    const double zeta = config.theta[edges[0].value];
    std::vector<std::pair<std::size_t, double>> moves;  // (loop id, shift)
    std::set<std::size_t> seen;
    for (const LinkIndex e : edges) {
      const std::size_t id = cover.loop_of_link[e.value];
      if (!seen.insert(id).second) continue;
      moves.emplace_back(id, angle_difference(zeta, config.theta[e.value], kPi));
    }
    auto shift_loops = [&](const PhaseConfig& base, double fraction) {
      work.theta = base.theta;
      for (const auto& [id, shift] : moves)
        for (const LinkIndex l : cover.loops[id].links) work.theta[l.value] += fraction * shift;
    };

    for (int k = 0; k <= n_steps; ++k) {
      shift_loops(config, static_cast<double>(k) / n_steps);
      record(0.0);
    }
    PhaseConfig merged = work;
    ramp_plaquette(merged);
    PhaseConfig flipped_merged = work;
    for (int k = 0; k <= n_steps; ++k) {
      shift_loops(flipped_merged, -static_cast<double>(k) / n_steps);
      record(kPi);
    }
  }

  result.final_config = config;
  for (const LinkIndex l : edges) result.final_config.theta[l.value] += kPi;
  result.final_config.canonicalize();
  tether_all(result.final_config, params.W, g);
  return result;
}

double single_link_shift_cost(const PhaseConfig& config, const CouplingParams& params,
                              const LatticeGeometry& g, LinkIndex link, bool retether) {
  g.check(link);
  const double before = josephson_energy(config, params, g);
  PhaseConfig shifted = config;
  shifted.theta[link.value] = canonical_phase(shifted.theta[link.value] + kPi);
  if (retether) {
    for (const LinkEnd& end : g.link_ends(link)) {
      const TetherResult t = tether_matter_phases(shifted.site_theta(g, end.site), params.W);
      shifted.set_site_phi(g, end.site, t.phi);
    }
  }
  return josephson_energy(shifted, params, g) - before;
}

}  // namespace cgs
