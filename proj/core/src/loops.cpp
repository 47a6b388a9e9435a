#include "cgs/loops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include "cgs/classical.hpp"
#include "cgs/error.hpp"

namespace cgs {

namespace {

constexpr int kDx[4] = {0, 1, 0, -1};
constexpr int kDy[4] = {1, 0, -1, 0};

}  // namespace

PairingConfig PairingConfig::uniform(const LatticeGeometry& g, Pairing p) {
  return {std::vector<Pairing>(g.num_sites(), p)};
}

PairingConfig PairingConfig::crystal(const LatticeGeometry& g, int sublattice) {
  if (sublattice != 0 && sublattice != 1) throw invalid_argument("crystal sublattice must be 0 or 1");
  PairingConfig pc;
  pc.pairing.resize(g.num_sites());
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const Coord c = g.site_coord(SiteIndex(s));
    pc.pairing[s] = ((c.x + c.y) % 2 == sublattice) ? Pairing::P12_34 : Pairing::P14_23;
  }
  return pc;
}

LoopCovering loops_from_pairing(const PairingConfig& pc, const LatticeGeometry& g) {
  if (pc.pairing.size() != g.num_sites())
    throw invalid_argument("pairing config has " + std::to_string(pc.pairing.size()) +
                           " entries, lattice has " + std::to_string(g.num_sites()) + " sites");

  LoopCovering out;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  out.loop_of_link.assign(g.num_links(), kUnset);

  for (std::size_t start = 0; start < g.num_links(); ++start) {
    if (out.loop_of_link[start] != kUnset) continue;
    const std::size_t id = out.loops.size();
    Loop loop;
    int dx = 0, dy = 0;

    // Enter the start link at its origin and walk towards its far end.
    LinkIndex link(start);
    auto ends = g.link_ends(link);
    SiteIndex site = ends[1].site;
    int in_leg = ends[1].leg;
    dx += kDx[ends[0].leg];
    dy += kDy[ends[0].leg];
    for (;;) {
      loop.links.push_back(link);
      out.loop_of_link[link.value] = id;
      const int out_leg = partner_leg(pc.pairing[site.value], in_leg);
      const LinkIndex next = g.star_links(site)[out_leg];
      if (next.value == start) break;
      if (out.loop_of_link[next.value] != kUnset)
        throw numeric_failure("loop tracing revisited a link; pairing table is inconsistent");
      dx += kDx[out_leg];
      dy += kDy[out_leg];
      site = g.neighbor(site, out_leg);
      in_leg = opposite_leg(out_leg);
      link = next;
    }
    loop.winding_x = dx / g.lx();
    loop.winding_y = dy / g.ly();
    ++out.stats.length_histogram[loop.links.size()];
    if (!loop.contractible()) ++out.stats.n_winding;
    out.loops.push_back(std::move(loop));
  }
  out.stats.n_loops = out.loops.size();
  return out;
}

LoopTracer::LoopTracer(const LatticeGeometry& g)
    : lx_(g.lx()), ly_(g.ly()), n_links_(g.num_links()), visited_(g.num_links(), 0) {
  link_.resize(4 * g.num_sites());
  neighbor_.resize(4 * g.num_sites());
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const auto links = g.star_links(SiteIndex(s));
    for (int leg = 0; leg < 4; ++leg) {
      link_[4 * s + leg] = static_cast<std::uint32_t>(links[leg].value);
      neighbor_[4 * s + leg] = static_cast<std::uint32_t>(g.neighbor(SiteIndex(s), leg).value);
    }
  }
}

int LoopTracer::count(const Pairing* pairing, int* n_winding) {
  std::fill(visited_.begin(), visited_.end(), 0);
  int loops = 0;
  int winding = 0;
  for (std::size_t start = 0; start < n_links_; ++start) {
    if (visited_[start]) continue;
    ++loops;
    // Links are numbered 2*site + {0: east, 1: north}.
    const std::uint32_t origin = static_cast<std::uint32_t>(start / 2);
    const int first_leg = (start % 2 == 0) ? 1 : 0;
    int dx = kDx[first_leg], dy = kDy[first_leg];
    std::uint32_t site = neighbor_[4 * origin + first_leg];
    int in_leg = opposite_leg(first_leg);
    visited_[start] = 1;
    for (;;) {
      const int out_leg = partner_leg(pairing[site], in_leg);
      const std::uint32_t next = link_[4 * site + out_leg];
      if (next == start) break;
      visited_[next] = 1;
      dx += kDx[out_leg];
      dy += kDy[out_leg];
      site = neighbor_[4 * site + out_leg];
      in_leg = opposite_leg(out_leg);
    }
    if (dx / lx_ != 0 || dy / ly_ != 0) ++winding;
  }
  if (n_winding) *n_winding = winding;
  return loops;
}

PhaseConfig phases_from_pairing(const LatticeGeometry& g, const PairingConfig& pc,
                                const std::vector<double>& loop_phases, const SignMatrix& w,
                                const std::vector<std::uint8_t>& pi_shift) {
  const LoopCovering cover = loops_from_pairing(pc, g);
  if (loop_phases.size() != cover.loops.size())
    throw invalid_argument("expected " + std::to_string(cover.loops.size()) + " loop phases, got " +
                           std::to_string(loop_phases.size()));
  if (!pi_shift.empty() && pi_shift.size() != g.num_links())
    throw invalid_argument("pi_shift must have one entry per link");

  PhaseConfig config = PhaseConfig::zeros(g);
  for (std::size_t l = 0; l < g.num_links(); ++l) {
    config.theta[l] = loop_phases[cover.loop_of_link[l]];
    if (!pi_shift.empty() && pi_shift[l]) config.theta[l] += kPi;
  }
  config.canonicalize();
  tether_all(config, w, g);
  return config;
}

double LoopEnumeration::partition_function(double lambda) const {
  if (lambda < 0.0) throw invalid_argument("loop fugacity must be >= 0");
  double z = 0.0;
  for (std::size_t n = count_by_loops.size(); n-- > 0;)
    z = z * lambda + static_cast<double>(count_by_loops[n]);
  return z;
}

namespace {

struct ShardResult {
  std::vector<std::uint64_t> count_by_loops;
  std::map<std::pair<int, int>, std::uint64_t> count_by_sector;
  int max_loops = 0;
  std::vector<std::vector<Pairing>> argmax;
};

// Enumerates every configuration whose top `prefix_sites` sites encode `shard`.
ShardResult run_shard(const LatticeGeometry& g, std::size_t shard, std::size_t prefix_sites) {
  const std::size_t n = g.num_sites();
  const std::size_t free_sites = n - prefix_sites;
  std::vector<Pairing> config(n, Pairing::P12_34);
  std::size_t code = shard;
  for (std::size_t k = free_sites; k < n; ++k) {
    config[k] = static_cast<Pairing>(code % 3);
    code /= 3;
  }

  ShardResult r;
  r.count_by_loops.assign(g.num_links() + 1, 0);
  LoopTracer tracer(g);
  for (;;) {
    int winding = 0;
    const int loops = tracer.count(config.data(), &winding);
    ++r.count_by_loops[loops];
    ++r.count_by_sector[{loops, winding}];
    if (loops > r.max_loops) {
      r.max_loops = loops;
      r.argmax.clear();
    }
    if (loops == r.max_loops) r.argmax.push_back(config);

    std::size_t k = 0;
    for (; k < free_sites; ++k) {
      const int next = static_cast<int>(config[k]) + 1;
      if (next < 3) {
        config[k] = static_cast<Pairing>(next);
        break;
      }
      config[k] = Pairing::P12_34;
    }
    if (k == free_sites) break;
  }
  return r;
}

}  // namespace

LoopEnumeration enumerate_loop_coverings(const LatticeGeometry& g, unsigned workers) {
  const std::size_t n = g.num_sites();
  if (n > kMaxEnumerationSites)
    throw size_guard("exhaustive loop enumeration supports at most " +
                     std::to_string(kMaxEnumerationSites) + " sites, lattice has " +
                     std::to_string(n));

  const std::size_t prefix_sites = std::min<std::size_t>(3, n);
  std::size_t n_shards = 1;
  for (std::size_t k = 0; k < prefix_sites; ++k) n_shards *= 3;

  std::vector<ShardResult> shards(n_shards);
  workers = std::max(1u, workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t s = w; s < n_shards; s += workers) shards[s] = run_shard(g, s, prefix_sites);
    });
  }
  for (auto& t : pool) t.join();

  LoopEnumeration out;
  out.count_by_loops.assign(g.num_links() + 1, 0);
  for (const auto& s : shards) out.max_loops = std::max(out.max_loops, s.max_loops);
  for (const auto& s : shards) {
    for (std::size_t k = 0; k < s.count_by_loops.size(); ++k) {
      out.count_by_loops[k] += s.count_by_loops[k];
      out.total += s.count_by_loops[k];
    }
    for (const auto& [key, c] : s.count_by_sector) out.count_by_sector[key] += c;
    if (s.max_loops == out.max_loops)
      for (const auto& a : s.argmax) out.argmax.push_back(PairingConfig{a});
  }
  while (out.count_by_loops.size() > 1 && out.count_by_loops.back() == 0) out.count_by_loops.pop_back();
  std::sort(out.argmax.begin(), out.argmax.end(), [](const PairingConfig& a, const PairingConfig& b) {
    return a.pairing < b.pairing;
  });
  return out;
}

LoopPartitionResult loop_partition_function(const LatticeGeometry& g, double lambda, unsigned workers) {
  const LoopEnumeration table = enumerate_loop_coverings(g, workers);
  return {table.partition_function(lambda), table.max_loops, table.argmax};
}

Z2Config Z2Config::all_up(const LatticeGeometry& g) {
  return {std::vector<std::int8_t>(g.num_links(), 1)};
}

int star_parity(const Z2Config& z, const LatticeGeometry& g, SiteIndex s) {
  int prod = 1;
  for (const LinkIndex l : g.star_links(s)) prod *= z.tau[l.value];
  return prod;
}

bool satisfies_star_constraints(const Z2Config& z, const LatticeGeometry& g) {
  if (z.tau.size() != g.num_links()) throw invalid_argument("Z2 config does not cover the lattice");
  for (std::size_t s = 0; s < g.num_sites(); ++s)
    if (star_parity(z, g, SiteIndex(s)) != 1) return false;
  return true;
}

Z2Config apply_plaquette_flip(const Z2Config& z, const LatticeGeometry& g, PlaquetteIndex p) {
  Z2Config out = z;
  for (const LinkIndex l : g.plaquette_links(p)) out.tau[l.value] = static_cast<std::int8_t>(-out.tau[l.value]);
  return out;
}

std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows, std::size_t n_cols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n_cols && rank < rows.size(); ++col) {
    const std::size_t word = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][word] & bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || !(rows[r][word] & bit)) continue;
      for (std::size_t w = 0; w < rows[r].size(); ++w) rows[r][w] ^= rows[rank][w];
    }
    ++rank;
  }
  return rank;
}

std::uint64_t count_z2_configs(const LatticeGeometry& g) {
  const std::size_t n_links = g.num_links();
  const std::size_t words = (n_links + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(g.num_sites(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t s = 0; s < g.num_sites(); ++s)
    for (const LinkIndex l : g.star_links(SiteIndex(s)))
      rows[s][l.value / 64] ^= std::uint64_t{1} << (l.value % 64);
  const std::size_t exponent = n_links - gf2_rank(std::move(rows), n_links);
  if (exponent > 63)
    throw size_guard("Z2 configuration count 2^" + std::to_string(exponent) + " overflows 64 bits");
  return std::uint64_t{1} << exponent;
}

std::uint64_t count_z2_configs_exhaustive(const LatticeGeometry& g) {
  const std::size_t n_links = g.num_links();
  if (n_links > 24)
    throw size_guard("exhaustive Z2 count supports at most 24 links, lattice has " +
                     std::to_string(n_links));
  std::vector<std::uint32_t> star_masks(g.num_sites(), 0);
  for (std::size_t s = 0; s < g.num_sites(); ++s)
    for (const LinkIndex l : g.star_links(SiteIndex(s))) star_masks[s] |= std::uint32_t{1} << l.value;

  std::uint64_t count = 0;
  const std::uint32_t end = std::uint32_t{1} << n_links;
  for (std::uint32_t flipped = 0; flipped < end; ++flipped) {
    bool ok = true;
    for (const std::uint32_t m : star_masks)
      if (std::popcount(flipped & m) % 2 != 0) {
        ok = false;
        break;
      }
    count += ok;
  }
  return count;
}

}  // namespace cgs
