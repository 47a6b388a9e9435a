#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "cgs/error.hpp"
#include "cgs/lattice.hpp"

using namespace cgs;

TEST(Lattice, CountsOnTorus) {
  const auto g = build_lattice(4, 6);
  EXPECT_EQ(g.num_sites(), 24u);
  EXPECT_EQ(g.num_links(), 48u);
  EXPECT_EQ(g.num_matter(), 96u);
  EXPECT_EQ(g.num_plaquettes(), 24u);
}

TEST(Lattice, RejectsOddOrTinyDimensions) {
  try {
    build_lattice(3, 4);
    FAIL() << "odd dimension accepted";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("even"), std::string::npos);
  }
  EXPECT_THROW(build_lattice(0, 2), Error);
  EXPECT_THROW(build_lattice(2, -2), Error);
}

TEST(Lattice, EveryLinkHasTwoEndsWithOppositeLegs) {
  const auto g = build_lattice(4, 4);
  std::map<std::size_t, int> seen;
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const auto star = g.star_links(SiteIndex(s));
    for (int leg = 0; leg < 4; ++leg) {
      ++seen[star[leg].value];
      EXPECT_EQ(g.neighbor(g.neighbor(SiteIndex(s), leg), opposite_leg(leg)), SiteIndex(s));
    }
  }
  ASSERT_EQ(seen.size(), g.num_links());
  for (const auto& [link, count] : seen) EXPECT_EQ(count, 2);

  for (std::size_t l = 0; l < g.num_links(); ++l) {
    const auto ends = g.link_ends(LinkIndex(l));
    EXPECT_EQ(ends[1].leg, opposite_leg(ends[0].leg));
    EXPECT_EQ(g.star_links(ends[0].site)[ends[0].leg], LinkIndex(l));
    EXPECT_EQ(g.star_links(ends[1].site)[ends[1].leg], LinkIndex(l));
  }
}

TEST(Lattice, PlaquetteBoundaryMatchesCornerLegs) {
  const auto g = build_lattice(4, 4);
  for (std::size_t p = 0; p < g.num_plaquettes(); ++p) {
    const PlaquetteIndex pi(p);
    const auto links = g.plaquette_links(pi);
    const std::set<LinkIndex> boundary(links.begin(), links.end());
    ASSERT_EQ(boundary.size(), 4u);
    std::map<LinkIndex, int> touches;
    const auto sites = g.plaquette_sites(pi);
    for (int c = 0; c < 4; ++c)
      for (int leg : g.plaquette_legs(pi, c)) {
        const LinkIndex l = g.star_links(sites[c])[leg];
        EXPECT_TRUE(boundary.count(l));
        ++touches[l];
      }
    for (const auto& [l, n] : touches) EXPECT_EQ(n, 2);
  }
}

TEST(Lattice, TwoByTwoTorusHasDistinctStarLinks) {
  const auto g = build_lattice(2, 2);
  for (std::size_t s = 0; s < g.num_sites(); ++s) {
    const auto star = g.star_links(SiteIndex(s));
    EXPECT_EQ(std::set<LinkIndex>(star.begin(), star.end()).size(), 4u);
  }
}

TEST(Lattice, MinimumImageDistance) {
  const auto g = build_lattice(4, 4);
  const LinkIndex a = g.horizontal_link(0, 0);
  EXPECT_DOUBLE_EQ(g.link_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(g.link_distance(a, g.horizontal_link(1, 0)), 1.0);
  // Wraps around: x = 0 and x = 3 are neighbours.
  EXPECT_DOUBLE_EQ(g.link_distance(a, g.horizontal_link(3, 0)), 1.0);
  EXPECT_DOUBLE_EQ(g.link_distance(a, g.horizontal_link(2, 2)), std::sqrt(8.0));
}

TEST(Lattice, PairingPartnersAreInvolutions) {
  for (Pairing p : kAllPairings)
    for (int leg = 0; leg < 4; ++leg) {
      EXPECT_NE(partner_leg(p, leg), leg);
      EXPECT_EQ(partner_leg(p, partner_leg(p, leg)), leg);
    }
  EXPECT_EQ(partner_leg(Pairing::P13_24, 0), 2);
}

TEST(Lattice, IndexChecks) {
  const auto g = build_lattice(2, 2);
  EXPECT_THROW(g.check(SiteIndex(4)), Error);
  EXPECT_THROW(g.check(LinkIndex(8)), Error);
  EXPECT_THROW(g.matter(SiteIndex(0), 4), Error);
  EXPECT_NO_THROW(g.check(MatterIndex(15)));
}
