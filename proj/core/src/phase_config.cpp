#include "cgs/phase_config.hpp"

#include <cmath>
#include <string>

#include "cgs/error.hpp"

namespace cgs {

double canonical_phase(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2pi.
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double angle_difference(double a, double b, double period) {
  double d = std::fmod(a - b, period);
  if (d <= -period / 2) d += period;
  if (d > period / 2) d -= period;
  return d;
}

PhaseConfig PhaseConfig::zeros(const LatticeGeometry& g) {
  return {std::vector<double>(g.num_links(), 0.0), std::vector<double>(g.num_matter(), 0.0)};
}

void PhaseConfig::require_covers(const LatticeGeometry& g) const {
  if (theta.size() != g.num_links())
    throw invalid_argument("phase config has " + std::to_string(theta.size()) +
                           " gauge phases, lattice has " + std::to_string(g.num_links()) + " links");
  if (phi.size() != g.num_matter())
    throw invalid_argument("phase config has " + std::to_string(phi.size()) +
                           " matter phases, lattice has " + std::to_string(g.num_matter()) +
                           " matter wires");
  for (double v : theta)
    if (!std::isfinite(v)) throw invalid_argument("non-finite gauge phase");
  for (double v : phi)
    if (!std::isfinite(v)) throw invalid_argument("non-finite matter phase");
}

void PhaseConfig::canonicalize() {
  for (double& v : theta) v = canonical_phase(v);
  for (double& v : phi) v = canonical_phase(v);
}

SitePhases PhaseConfig::site_theta(const LatticeGeometry& g, SiteIndex s) const {
  const auto links = g.star_links(s);
  return {theta[links[0].value], theta[links[1].value], theta[links[2].value], theta[links[3].value]};
}

SitePhases PhaseConfig::site_phi(const LatticeGeometry& g, SiteIndex s) const {
  g.check(s);
  const std::size_t base = 4 * s.value;
  return {phi[base], phi[base + 1], phi[base + 2], phi[base + 3]};
}

void PhaseConfig::set_site_phi(const LatticeGeometry& g, SiteIndex s, const SitePhases& values) {
  g.check(s);
  for (int n = 0; n < 4; ++n) phi[4 * s.value + n] = values[n];
}

namespace {

void apply_left(PhaseConfig& out, const PhaseConfig& in, const LatticeGeometry& g, SiteIndex site,
                const MonomialMatrix& left) {
  const SitePhases old_phi = in.site_phi(g, site);
  SitePhases new_phi{};
  for (int n = 0; n < 4; ++n)
    new_phi[n] = old_phi[left.permutation[n]] + (left.signs[n] < 0 ? kPi : 0.0);
  out.set_site_phi(g, site, new_phi);
}

}  // namespace

PhaseConfig apply_gauge_transformation(const PhaseConfig& config, const LatticeGeometry& g,
                                       SiteIndex site, const AutomorphismPair& pair) {
  g.check(site);
  config.require_covers(g);
  if (!pair.right_is_diagonal())
    throw invalid_argument("gauge transformation requires a diagonal R (gauge legs cannot be permuted)");
  pair.left.validate();

  PhaseConfig out = config;
  const auto links = g.star_links(site);
  for (int i = 0; i < 4; ++i)
    if (pair.right.signs[i] < 0) out.theta[links[i].value] += kPi;
  apply_left(out, config, g, site, pair.left);
  out.canonicalize();
  return out;
}

PhaseConfig apply_plaquette_generator(const PhaseConfig& config, const LatticeGeometry& g,
                                      PlaquetteIndex p, const SignMatrix& w) {
  config.require_covers(g);
  PhaseConfig out = config;
  for (const LinkIndex l : g.plaquette_links(p)) out.theta[l.value] += kPi;

  const auto corners = g.plaquette_sites(p);
  for (int c = 0; c < 4; ++c) {
    std::array<int, 4> r{1, 1, 1, 1};
    for (int leg : g.plaquette_legs(p, c)) r[leg] = -1;
    apply_left(out, config, g, corners[c], left_partner(w, r));
  }
  out.canonicalize();
  return out;
}

}  // namespace cgs
