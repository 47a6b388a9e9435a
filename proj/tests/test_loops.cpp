#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cgs/classical.hpp"
#include "cgs/error.hpp"
#include "cgs/loops.hpp"
#include "cgs/rng.hpp"

using namespace cgs;

namespace {

// Links are nodes, each site pairing joins two of them. Every node has
// degree two, so components are exactly the loops.
int union_find_loops(const PairingConfig& pc, const LatticeGeometry& g) {
  std::vector<std::size_t> parent(g.num_links());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const auto star = g.star_links(SiteIndex(s));
    for (int leg = 0; leg < 4; ++leg) {
      const int other = partner_leg(pc.pairing[s], leg);
      parent[find(star[leg].value)] = find(star[other].value);
    }
  }
  int n = 0;
  for (std::size_t l = 0; l < g.num_links(); ++l) n += find(l) == l;
  return n;
}

PairingConfig random_pairing(const LatticeGeometry& g, CounterRng& rng) {
  PairingConfig pc = PairingConfig::uniform(g, Pairing::P12_34);
  for (auto& p : pc.pairing) p = kAllPairings[rng.next_u32() % 3];
  return pc;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST(Loops, TracerAndCoveringAgreeWithUnionFind) {
  for (auto [lx, ly] : {std::pair{2, 2}, std::pair{4, 4}, std::pair{6, 4}}) {
    const auto g = build_lattice(lx, ly);
    LoopTracer tracer(g);
    CounterRng rng(21, lx * 10 + ly);
    for (int k = 0; k < 300; ++k) {
      const PairingConfig pc = random_pairing(g, rng);
      const int oracle = union_find_loops(pc, g);
      EXPECT_EQ(tracer.count(pc.pairing.data()), oracle);
      const LoopCovering cov = loops_from_pairing(pc, g);
      EXPECT_EQ(cov.stats.n_loops, static_cast<std::size_t>(oracle));
      std::size_t total = 0;
      for (std::size_t i = 0; i < cov.loops.size(); ++i) {
        total += cov.loops[i].links.size();
        for (LinkIndex l : cov.loops[i].links) EXPECT_EQ(cov.loop_of_link[l.value], i);
      }
      EXPECT_EQ(total, g.num_links());
    }
  }
}

TEST(Loops, CrystalHasElementaryLoops) {
  const auto g = build_lattice(4, 4);
  const LoopCovering cov = loops_from_pairing(PairingConfig::crystal(g), g);
  EXPECT_EQ(cov.stats.n_loops, 8u);
  EXPECT_EQ(cov.stats.n_winding, 0u);
  EXPECT_EQ(cov.stats.length_histogram, (std::map<std::size_t, std::size_t>{{4, 8}}));
  // Loops circle the x+y even plaquettes.
  for (const Loop& loop : cov.loops) {
    std::vector<LinkIndex> sorted = loop.links;
    std::sort(sorted.begin(), sorted.end());
    bool matched = false;
    for (std::size_t p = 0; p < g.num_plaquettes(); ++p) {
      auto boundary = g.plaquette_links(PlaquetteIndex(p));
      std::sort(boundary.begin(), boundary.end());
      if (std::equal(boundary.begin(), boundary.end(), sorted.begin(), sorted.end())) {
        const Coord c = g.plaquette_coord(PlaquetteIndex(p));
        EXPECT_EQ((c.x + c.y) % 2, 0);
        matched = true;
      }
    }
    EXPECT_TRUE(matched);
  }
}

TEST(Loops, StraightPairingWindsAround) {
  const auto g = build_lattice(4, 4);
  const LoopCovering cov = loops_from_pairing(PairingConfig::uniform(g, Pairing::P13_24), g);
  EXPECT_EQ(cov.stats.n_loops, 8u);
  EXPECT_EQ(cov.stats.n_winding, 8u);
  for (const Loop& l : cov.loops) {
    EXPECT_FALSE(l.contractible());
    EXPECT_EQ(std::abs(l.winding_x) + std::abs(l.winding_y), 1);
  }
}

TEST(Loops, EnumerationTwoByTwo) {
  const auto g = build_lattice(2, 2);
  const LoopEnumeration e = enumerate_loop_coverings(g);
  EXPECT_EQ(e.total, 81u);
  // Oracle: union-find over every covering.
  std::vector<std::uint64_t> oracle(g.num_links() + 1, 0);
  PairingConfig pc = PairingConfig::uniform(g, Pairing::P12_34);
  for (int code = 0; code < 81; ++code) {
    int c = code;
    for (auto& p : pc.pairing) {
      p = kAllPairings[c % 3];
      c /= 3;
    }
    ++oracle[union_find_loops(pc, g)];
  }
  for (std::size_t n = 0; n < oracle.size(); ++n)
    EXPECT_EQ(n < e.count_by_loops.size() ? e.count_by_loops[n] : 0u, oracle[n]) << n << " loops";
  EXPECT_NEAR(e.partition_function(1.0), 81.0, 1e-9);
  EXPECT_EQ(count_z2_configs(g), 32u);
  EXPECT_EQ(count_z2_configs_exhaustive(g), 32u);
  // Joint count of (covering, tau) pairs.
  EXPECT_EQ(e.total * count_z2_configs(g), 2592u);
}

TEST(Loops, EnumerationFourByFour) {
  const auto g = build_lattice(4, 4);
  const LoopEnumeration e = enumerate_loop_coverings(g, 4);
  EXPECT_EQ(e.total, ipow(3, 16));
  std::uint64_t sum = 0;
  for (auto c : e.count_by_loops) sum += c;
  EXPECT_EQ(sum, e.total);
  EXPECT_EQ(e.max_loops, 8);
  const auto has = [&](const PairingConfig& pc) {
    return std::find(e.argmax.begin(), e.argmax.end(), pc) != e.argmax.end();
  };
  EXPECT_TRUE(has(PairingConfig::crystal(g, 0)));
  EXPECT_TRUE(has(PairingConfig::crystal(g, 1)));
  for (const auto& pc : e.argmax) EXPECT_EQ(union_find_loops(pc, g), 8);
  EXPECT_NEAR(e.partition_function(1.0) / std::pow(3.0, 16), 1.0, 1e-12);

  const LoopEnumeration e1 = enumerate_loop_coverings(g, 1);
  EXPECT_EQ(e1.count_by_loops, e.count_by_loops);
  EXPECT_EQ(e1.count_by_sector, e.count_by_sector);
}

TEST(Loops, PartitionFunctionAtUnitFugacity) {
  const auto g = build_lattice(2, 4);
  const LoopPartitionResult r = loop_partition_function(g, 1.0, 2);
  EXPECT_NEAR(r.value, std::pow(3.0, 8), 1e-6);
  const LoopPartitionResult r2 = loop_partition_function(g, 2.0, 2);
  EXPECT_GT(r2.value, r.value);
  EXPECT_EQ(r2.max_loops, r.max_loops);
}

TEST(Loops, EnumerationSizeGuard) {
  const auto g = build_lattice(6, 4);
  try {
    enumerate_loop_coverings(g);
    FAIL() << "no size guard";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeGuard);
  }
}

TEST(Loops, Z2CountsByRankAndBruteForce) {
  EXPECT_EQ(count_z2_configs(build_lattice(2, 4)), count_z2_configs_exhaustive(build_lattice(2, 4)));
  // N_links - (N_sites - 1) free bits.
  EXPECT_EQ(count_z2_configs(build_lattice(4, 4)), std::uint64_t{1} << 17);
  EXPECT_EQ(count_z2_configs(build_lattice(6, 6)), std::uint64_t{1} << 37);
  EXPECT_THROW(count_z2_configs_exhaustive(build_lattice(4, 4)), Error);
}

TEST(Loops, PlaquetteFlipPreservesStarConstraints) {
  const auto g = build_lattice(4, 4);
  Z2Config z = Z2Config::all_up(g);
  EXPECT_TRUE(satisfies_star_constraints(z, g));
  CounterRng rng(22, 0);
  for (int k = 0; k < 100; ++k) {
    z = apply_plaquette_flip(z, g, PlaquetteIndex(rng.next_u32() % g.num_plaquettes()));
    ASSERT_TRUE(satisfies_star_constraints(z, g));
  }
  z.tau[3] = static_cast<std::int8_t>(-z.tau[3]);
  EXPECT_FALSE(satisfies_star_constraints(z, g));
  const auto ends = g.link_ends(LinkIndex(3));
  EXPECT_EQ(star_parity(z, g, ends[0].site), -1);
  EXPECT_EQ(star_parity(z, g, ends[1].site), -1);
}

TEST(Loops, Gf2Rank) {
  EXPECT_EQ(gf2_rank({{0b011}, {0b110}, {0b101}}, 3), 2u);
  EXPECT_EQ(gf2_rank({{0b001}, {0b010}, {0b100}}, 3), 3u);
  EXPECT_EQ(gf2_rank({}, 3), 0u);
}

TEST(Loops, PhasesFromPairingAreGroundStates) {
  const auto g = build_lattice(4, 4);
  CounterRng rng(23, 0);
  const CouplingParams p{};
  for (int k = 0; k < 20; ++k) {
    const PairingConfig pc = random_pairing(g, rng);
    const LoopCovering cov = loops_from_pairing(pc, g);
    std::vector<double> phases;
    for (std::size_t i = 0; i < cov.loops.size(); ++i) phases.push_back(kTwoPi * rng.uniform());
    // pi shifts must obey the star constraint.
    Z2Config z = Z2Config::all_up(g);
    for (int f = 0; f < 6; ++f) z = apply_plaquette_flip(z, g, PlaquetteIndex(rng.next_u32() % g.num_plaquettes()));
    std::vector<std::uint8_t> shift(g.num_links());
    for (std::size_t l = 0; l < shift.size(); ++l) shift[l] = z.tau[l] < 0;
    const PhaseConfig c = phases_from_pairing(g, pc, phases, p.W, shift);
    EXPECT_NEAR(josephson_energy(c, p, g), -8.0 * g.num_sites(), 1e-9);
  }
}
