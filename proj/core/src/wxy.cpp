#include "cgs/wxy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>

#include "cgs/error.hpp"

namespace cgs {

namespace {

const char* kLegNames = "NESW";

WxyGenerator star_generator(int site, int a, int b) {
  WxyGenerator gen;
  gen.label = std::string("legs ") + kLegNames[a] + kLegNames[b];
  gen.corners.push_back({site, {a, b}});
  return gen;
}

}  // namespace

void WxyCluster::validate() const {
  if (n_sites < 1) throw invalid_argument("cluster needs at least one site");
  if (static_cast<int>(legs.size()) != n_sites) throw invalid_argument("leg table size mismatch");
  if (n_spins() > kMaxSpins)
    throw size_guard("cluster has " + std::to_string(n_spins()) + " spins, limit " +
                     std::to_string(kMaxSpins));
  std::vector<int> uses(static_cast<std::size_t>(n_gauge), 0);
  for (const auto& site_legs : legs)
    for (int gs : site_legs) {
      if (gs < 0 || gs >= n_gauge) throw invalid_argument("gauge spin index out of range");
      ++uses[static_cast<std::size_t>(gs)];
    }
  for (int u : uses)
    if (u == 0 || u > 2) throw invalid_argument("every gauge spin must touch one or two legs");
  for (const auto& gen : generators) {
    // The gauge set is every gauge spin on a flipped leg, taken once.
    std::set<int> touched;
    for (const auto& c : gen.corners) {
      if (c.site < 0 || c.site >= n_sites) throw invalid_argument("generator corner out of range");
      if (c.legs[0] == c.legs[1]) throw invalid_argument("generator corner repeats a leg");
      for (int leg : c.legs) touched.insert(legs[c.site][leg]);
    }
    const std::vector<int> expected(touched.begin(), touched.end());
    std::vector<int> given = gen.gauge;
    std::sort(given.begin(), given.end());
    if (given != expected) throw invalid_argument("generator '" + gen.label + "' is inconsistent");
  }
}

WxyCluster WxyCluster::single_waffle() {
  WxyCluster c;
  c.name = "single_waffle";
  c.n_sites = 1;
  c.n_gauge = 4;
  c.legs = {{0, 1, 2, 3}};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      WxyGenerator gen = star_generator(0, a, b);
      gen.gauge = {a, b};
      c.generators.push_back(gen);
    }
  WxyGenerator all;
  all.label = "legs NESW";
  all.corners = {{0, {0, 1}}, {0, {2, 3}}};
  all.gauge = {0, 1, 2, 3};
  c.generators.push_back(all);
  return c;
}

WxyCluster WxyCluster::two_site_ring() {
  WxyCluster c;
  c.name = "two_site_ring";
  c.n_sites = 2;
  c.n_gauge = 6;
  // Gauge 0: A.E-B.W, gauge 1: B.E-A.W; 2..5 open N/S legs.
  c.legs = {{2, 0, 3, 1}, {4, 1, 5, 0}};
  WxyGenerator plaq;
  plaq.label = "plaquette";
  plaq.corners = {{0, {1, 3}}, {1, {1, 3}}};
  plaq.gauge = {0, 1};
  c.generators.push_back(plaq);
  return c;
}

WxyCluster WxyCluster::from_lattice(const LatticeGeometry& g) {
  WxyCluster c;
  c.name = "torus_" + std::to_string(g.lx()) + "x" + std::to_string(g.ly());
  c.n_sites = static_cast<int>(g.num_sites());
  c.n_gauge = static_cast<int>(g.num_links());
  if (c.n_spins() > kMaxSpins)
    throw size_guard("torus cluster has " + std::to_string(c.n_spins()) + " spins, limit " +
                     std::to_string(kMaxSpins));
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const auto links = g.star_links(SiteIndex(s));
    c.legs.push_back({static_cast<int>(links[0].value), static_cast<int>(links[1].value),
                      static_cast<int>(links[2].value), static_cast<int>(links[3].value)});
  }
  for (std::size_t p = 0; p < g.num_plaquettes(); ++p) {
    const PlaquetteIndex pi(p);
    WxyGenerator gen;
    gen.label = "plaquette " + std::to_string(p);
    const auto sites = g.plaquette_sites(pi);
    for (int k = 0; k < 4; ++k)
      gen.corners.push_back({static_cast<int>(sites[k].value), g.plaquette_legs(pi, k)});
    for (LinkIndex l : g.plaquette_links(pi)) gen.gauge.push_back(static_cast<int>(l.value));
    c.generators.push_back(gen);
  }
  return c;
}

void WxyParams::validate() const {
  if (!(J > 0.0) || !std::isfinite(J)) throw invalid_argument("J must be finite and > 0");
  if (!is_hadamard(W)) throw invalid_argument("W is not Hadamard");
  if (!std::isfinite(h_matter) || !std::isfinite(h_gauge)) throw invalid_argument("bias must be finite");
}

PauliSum wxy_hamiltonian_terms(const WxyCluster& cluster, const WxyParams& params) {
  cluster.validate();
  params.validate();
  PauliSum h(cluster.n_spins());
  for (int s = 0; s < cluster.n_sites; ++s)
    for (int n = 0; n < 4; ++n)
      for (int i = 0; i < 4; ++i)
        h.add_xy_hopping(cluster.matter_spin(s, n), cluster.gauge_spin(cluster.legs[s][i]),
                         -params.J * params.W(n, i));
  if (params.h_matter != 0.0 || params.h_gauge != 0.0)
    h += wxy_bias_terms(cluster, params.h_matter, params.h_gauge);
  return h.simplified();
}

SparseMatrix wxy_hamiltonian(const WxyCluster& cluster, const WxyParams& params) {
  return wxy_hamiltonian_terms(cluster, params).to_sparse();
}

PauliSum wxy_bias_terms(const WxyCluster& cluster, double h_matter, double h_gauge) {
  PauliSum b(cluster.n_spins());
  for (int s = 0; s < cluster.n_sites; ++s)
    for (int n = 0; n < 4; ++n) b.add_z(cluster.matter_spin(s, n), h_matter);
  for (int gs = 0; gs < cluster.n_gauge; ++gs) b.add_z(cluster.gauge_spin(gs), h_gauge);
  return b;
}

PauliSum total_sz(const WxyCluster& cluster) {
  PauliSum sz(cluster.n_spins());
  for (int k = 0; k < cluster.n_spins(); ++k) sz.add_z(k, 0.5);
  return sz;
}

SparseMatrix wxy_generator(const WxyCluster& cluster, std::size_t k, const SignMatrix& w) {
  cluster.validate();
  if (k >= cluster.generators.size()) throw invalid_argument("generator index out of range");
  const WxyGenerator& gen = cluster.generators[k];

  // Combine corners on the same site into one R sign vector.
  std::vector<std::array<int, 4>> r(static_cast<std::size_t>(cluster.n_sites), {1, 1, 1, 1});
  std::set<int> touched;
  for (const auto& c : gen.corners) {
    for (int leg : c.legs) r[static_cast<std::size_t>(c.site)][leg] *= -1;
    touched.insert(c.site);
  }
  struct SiteMap {
    int site;
    MonomialMatrix L;
  };
  std::vector<SiteMap> maps;
  for (int s : touched) maps.push_back({s, left_partner(w, r[static_cast<std::size_t>(s)])});

  std::uint64_t gauge_mask = 0;
  for (int gs : gen.gauge) gauge_mask |= std::uint64_t{1} << cluster.gauge_spin(gs);

  // U = S P Z_gauge with P moving matter spin n to p(n) and S = mu^z on
  // p(n) wherever s_n = -1, so that U mu^-_n U^dag = s_n mu^-_{p(n)}.
  std::uint64_t sign_mask = 0;
  for (const auto& m : maps)
    for (int n = 0; n < 4; ++n)
      if (m.L.signs[n] < 0) sign_mask |= std::uint64_t{1} << cluster.matter_spin(m.site, m.L.permutation[n]);

  return signed_permutation_matrix(cluster.n_spins(), [&](std::uint64_t b) {
    double sign = (std::popcount(b & gauge_mask) & 1) ? -1.0 : 1.0;
    std::uint64_t out = b;
    for (const auto& m : maps) {
      for (int n = 0; n < 4; ++n) out &= ~(std::uint64_t{1} << cluster.matter_spin(m.site, n));
      for (int n = 0; n < 4; ++n)
        if (b >> cluster.matter_spin(m.site, n) & 1)
          out |= std::uint64_t{1} << cluster.matter_spin(m.site, m.L.permutation[n]);
    }
    if (std::popcount(out & sign_mask) & 1) sign = -sign;
    return std::make_pair(out, sign);
  });
}

WxyConservation check_wxy_conservation(const WxyCluster& cluster, const WxyParams& params) {
  WxyParams bare = params;
  bare.h_matter = bare.h_gauge = 0.0;
  const SparseMatrix h = wxy_hamiltonian(cluster, bare);
  const SparseMatrix bias =
      wxy_bias_terms(cluster, params.h_matter == 0.0 ? 1.0 : params.h_matter,
                     params.h_gauge == 0.0 ? 1.0 : params.h_gauge)
          .to_sparse();
  std::vector<SparseMatrix> gens;
  for (std::size_t k = 0; k < cluster.generators.size(); ++k)
    gens.push_back(wxy_generator(cluster, k, params.W));
  WxyConservation r;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    r.hamiltonian_commutator = std::max(r.hamiltonian_commutator, commutator_norm(h, gens[a]));
    r.bias_commutator = std::max(r.bias_commutator, commutator_norm(bias, gens[a]));
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      r.generator_commutator = std::max(r.generator_commutator, commutator_norm(gens[a], gens[b]));
  }
  r.sz_commutator = commutator(wxy_hamiltonian_terms(cluster, bare), total_sz(cluster)).frobenius_norm();
  return r;
}

}  // namespace cgs
