#include "cgs/effective_quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cgs/classical.hpp"
#include "cgs/error.hpp"

namespace cgs {

namespace {

struct Weighted {
  double energy;
  std::uint64_t count;
};

// Merges entries whose energies agree to 1e-12 (relative to the scale).
std::vector<Weighted> merge(std::vector<Weighted> v, double scale) {
  std::sort(v.begin(), v.end(), [](const Weighted& a, const Weighted& b) { return a.energy < b.energy; });
  std::vector<Weighted> out;
  for (const auto& w : v) {
    if (!out.empty() && std::abs(w.energy - out.back().energy) <= 1e-12 * scale) {
      out.back().count += w.count;
    } else {
      out.push_back(w);
    }
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

StabilizerModelParams StabilizerModelParams::uniform(const LatticeGeometry& g, double lambda_J,
                                                     double lambda_flip) {
  return {lambda_J, std::vector<double>(g.num_plaquettes(), lambda_flip)};
}

StabilizerModelParams StabilizerModelParams::two_valued(const LatticeGeometry& g, double lambda_J,
                                                        double type_a, double type_b) {
  StabilizerModelParams p{lambda_J, {}};
  for (std::size_t i = 0; i < g.num_plaquettes(); ++i) {
    const Coord c = g.plaquette_coord(PlaquetteIndex(i));
    p.lambda_flip.push_back((c.x + c.y) % 2 == 0 ? type_a : type_b);
  }
  return p;
}

void StabilizerModelParams::validate(const LatticeGeometry& g) const {
  if (!(lambda_J >= 0.0) || !std::isfinite(lambda_J))
    throw invalid_argument("lambda_J must be finite and >= 0");
  if (lambda_flip.size() != g.num_plaquettes())
    throw invalid_argument("lambda_flip needs " + std::to_string(g.num_plaquettes()) +
                           " entries, got " + std::to_string(lambda_flip.size()));
  for (std::size_t p = 0; p < lambda_flip.size(); ++p)
    if (!(lambda_flip[p] >= 0.0) || !std::isfinite(lambda_flip[p]))
      throw invalid_argument("lambda_flip[" + std::to_string(p) + "] must be finite and >= 0");
}

void require_quantum_size(const LatticeGeometry& g) {
  if (g.num_links() > kMaxQuantumLinks)
    throw size_guard(std::to_string(g.num_links()) + " links exceed the quantum limit of " +
                     std::to_string(kMaxQuantumLinks));
}

PauliSum star_operator(const LatticeGeometry& g, SiteIndex s) {
  require_quantum_size(g);
  g.check(s);
  std::uint32_t mask = 0;
  for (LinkIndex l : g.star_links(s)) mask ^= 1u << l.value;
  PauliSum op(static_cast<int>(g.num_links()));
  op.add(0u, mask, 1.0);
  return op;
}

PauliSum plaquette_operator(const LatticeGeometry& g, PlaquetteIndex p) {
  require_quantum_size(g);
  g.check(p);
  std::uint32_t mask = 0;
  for (LinkIndex l : g.plaquette_links(p)) mask ^= 1u << l.value;
  PauliSum op(static_cast<int>(g.num_links()));
  op.add(mask, 0u, 1.0);
  return op;
}

PauliSum effective_hamiltonian_terms(const LatticeGeometry& g, const StabilizerModelParams& params) {
  require_quantum_size(g);
  params.validate(g);
  PauliSum h(static_cast<int>(g.num_links()));
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    PauliSum star = star_operator(g, SiteIndex(s));
    h += (star *= -params.lambda_J);
  }
  for (std::size_t p = 0; p < g.num_plaquettes(); ++p) {
    PauliSum plaq = plaquette_operator(g, PlaquetteIndex(p));
    h += (plaq *= -params.lambda_flip[p]);
  }
  return h;
}

SparseMatrix build_effective_hamiltonian(const LatticeGeometry& g, const StabilizerModelParams& params) {
  return effective_hamiltonian_terms(g, params).to_sparse();
}

std::vector<SpectrumLevel> stabilizer_spectrum_oracle(const LatticeGeometry& g,
                                                      const StabilizerModelParams& params) {
  require_quantum_size(g);
  params.validate(g);
  double scale = params.lambda_J * static_cast<double>(g.num_sites());
  for (double l : params.lambda_flip) scale += l;
  scale = std::max(scale, 1.0);

  // Stars: m violations out of N_s, m even.
  const std::uint64_t ns = g.num_sites();
  std::vector<Weighted> stars;
  for (std::uint64_t m = 0; m <= ns; m += 2)
    stars.push_back({-params.lambda_J * (static_cast<double>(ns) - 2.0 * static_cast<double>(m)), binomial(ns, m)});
  stars = merge(stars, scale);

  // Plaquettes: dynamic programme over b_p = +-1 tracking violation parity.
  std::vector<Weighted> even{{0.0, 1}}, odd;
  for (double lf : params.lambda_flip) {
    std::vector<Weighted> ne, no;
    for (const auto& w : even) {
      ne.push_back({w.energy - lf, w.count});
      no.push_back({w.energy + lf, w.count});
    }
    for (const auto& w : odd) {
      no.push_back({w.energy - lf, w.count});
      ne.push_back({w.energy + lf, w.count});
    }
    even = merge(ne, scale);
    odd = merge(no, scale);
  }

  std::vector<Weighted> all;
  for (const auto& s : stars)
    for (const auto& p : even) all.push_back({s.energy + p.energy, 4 * s.count * p.count});
  all = merge(all, scale);

  std::vector<SpectrumLevel> out;
  std::uint64_t total = 0;
  for (const auto& w : all) {
    out.push_back({w.energy, w.count});
    total += w.count;
  }
  if (total != (std::uint64_t{1} << g.num_links()))
    throw numeric_failure("stabilizer oracle does not cover the Hilbert space");
  return out;
}

std::vector<double> expand_levels(const std::vector<SpectrumLevel>& levels, std::size_t limit) {
  std::vector<double> out;
  for (const auto& l : levels) {
    for (std::uint64_t k = 0; k < l.degeneracy && out.size() < limit; ++k) out.push_back(l.energy);
    if (out.size() >= limit) break;
  }
  return out;
}

ConservationReport check_conserved_plaquettes(const SparseMatrix& h, const LatticeGeometry& g) {
  require_quantum_size(g);
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << g.num_links());
  if (h.rows() != dim || h.cols() != dim)
    throw invalid_argument("Hamiltonian dimension does not match 2^N_links");
  std::vector<SparseMatrix> gens;
  for (std::size_t p = 0; p < g.num_plaquettes(); ++p)
    gens.push_back(plaquette_operator(g, PlaquetteIndex(p)).to_sparse());
  ConservationReport r;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    r.hamiltonian_commutator = std::max(r.hamiltonian_commutator, commutator_norm(h, gens[a]));
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      r.generator_commutator = std::max(r.generator_commutator, commutator_norm(gens[a], gens[b]));
  }
  return r;
}

double classical_star_gap(double J) {
  const CouplingParams params{J, SignMatrix::standard()};
  params.validate();
  const double ground = site_min_energy({0.0, 0.0, 0.0, 0.0}, params);
  const double excited = site_min_energy({0.0, 0.0, 0.0, kPi}, params);
  return 2.0 * (excited - ground);
}

}  // namespace cgs
