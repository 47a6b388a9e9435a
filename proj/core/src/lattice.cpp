#include "cgs/lattice.hpp"

#include <cmath>
#include <string>

#include "cgs/error.hpp"

namespace cgs {

namespace {

int wrap(int v, int n) { return ((v % n) + n) % n; }

double wrapped_delta(double d, double period) {
  d = std::fmod(std::abs(d), period);
  return std::min(d, period - d);
}

}  // namespace

LatticeGeometry build_lattice(int lx, int ly) {
  if (lx < 2 || ly < 2)
    throw invalid_argument("lattice dimensions must be >= 2, got " + std::to_string(lx) + "x" +
                           std::to_string(ly));
  if (lx % 2 != 0 || ly % 2 != 0)
    throw invalid_argument("lattice dimensions must be even (alternating-plaquette crystal), got " +
                           std::to_string(lx) + "x" + std::to_string(ly));
  return LatticeGeometry(lx, ly);
}

SiteIndex LatticeGeometry::site(int x, int y) const {
  return SiteIndex(static_cast<std::size_t>(wrap(y, ly_)) * lx_ + wrap(x, lx_));
}

Coord LatticeGeometry::site_coord(SiteIndex s) const {
  check(s);
  return {static_cast<int>(s.value % lx_), static_cast<int>(s.value / lx_)};
}

LinkIndex LatticeGeometry::horizontal_link(int x, int y) const {
  return LinkIndex(2 * site(x, y).value);
}

LinkIndex LatticeGeometry::vertical_link(int x, int y) const {
  return LinkIndex(2 * site(x, y).value + 1);
}

LinkOrientation LatticeGeometry::orientation(LinkIndex l) const {
  check(l);
  return l.value % 2 == 0 ? LinkOrientation::Horizontal : LinkOrientation::Vertical;
}

Coord LatticeGeometry::link_origin(LinkIndex l) const {
  check(l);
  return site_coord(SiteIndex(l.value / 2));
}

std::array<LinkEnd, 2> LatticeGeometry::link_ends(LinkIndex l) const {
  const Coord c = link_origin(l);
  if (orientation(l) == LinkOrientation::Horizontal)
    return {LinkEnd{site(c.x, c.y), static_cast<int>(Leg::East)},
            LinkEnd{site(c.x + 1, c.y), static_cast<int>(Leg::West)}};
  return {LinkEnd{site(c.x, c.y), static_cast<int>(Leg::North)},
          LinkEnd{site(c.x, c.y + 1), static_cast<int>(Leg::South)}};
}

std::array<LinkIndex, 4> LatticeGeometry::star_links(SiteIndex s) const {
  const Coord c = site_coord(s);
  return {vertical_link(c.x, c.y), horizontal_link(c.x, c.y), vertical_link(c.x, c.y - 1),
          horizontal_link(c.x - 1, c.y)};
}

SiteIndex LatticeGeometry::neighbor(SiteIndex s, int leg) const {
  const Coord c = site_coord(s);
  switch (static_cast<Leg>(leg)) {
    case Leg::North: return site(c.x, c.y + 1);
    case Leg::East: return site(c.x + 1, c.y);
    case Leg::South: return site(c.x, c.y - 1);
    case Leg::West: return site(c.x - 1, c.y);
  }
  throw invalid_argument("leg out of range: " + std::to_string(leg));
}

PlaquetteIndex LatticeGeometry::plaquette(int x, int y) const {
  return PlaquetteIndex(site(x, y).value);
}

Coord LatticeGeometry::plaquette_coord(PlaquetteIndex p) const {
  check(p);
  return {static_cast<int>(p.value % lx_), static_cast<int>(p.value / lx_)};
}

std::array<LinkIndex, 4> LatticeGeometry::plaquette_links(PlaquetteIndex p) const {
  const Coord c = plaquette_coord(p);
  return {horizontal_link(c.x, c.y), vertical_link(c.x + 1, c.y), horizontal_link(c.x, c.y + 1),
          vertical_link(c.x, c.y)};
}

std::array<SiteIndex, 4> LatticeGeometry::plaquette_sites(PlaquetteIndex p) const {
  const Coord c = plaquette_coord(p);
  return {site(c.x, c.y), site(c.x + 1, c.y), site(c.x + 1, c.y + 1), site(c.x, c.y + 1)};
}

std::array<int, 2> LatticeGeometry::plaquette_legs(PlaquetteIndex p, int corner) const {
  check(p);
  constexpr int N = static_cast<int>(Leg::North), E = static_cast<int>(Leg::East),
                S = static_cast<int>(Leg::South), W = static_cast<int>(Leg::West);
  switch (corner) {
    case 0: return {N, E};
    case 1: return {N, W};
    case 2: return {S, W};
    case 3: return {E, S};
  }
  throw invalid_argument("plaquette corner out of range: " + std::to_string(corner));
}

MatterIndex LatticeGeometry::matter(SiteIndex s, int slot) const {
  check(s);
  if (slot < 0 || slot > 3) throw invalid_argument("matter slot out of range: " + std::to_string(slot));
  return MatterIndex(4 * s.value + static_cast<std::size_t>(slot));
}

std::pair<double, double> LatticeGeometry::link_midpoint(LinkIndex l) const {
  const Coord c = link_origin(l);
  if (orientation(l) == LinkOrientation::Horizontal) return {c.x + 0.5, static_cast<double>(c.y)};
  return {static_cast<double>(c.x), c.y + 0.5};
}

double LatticeGeometry::link_distance(LinkIndex a, LinkIndex b) const {
  const auto [ax, ay] = link_midpoint(a);
  const auto [bx, by] = link_midpoint(b);
  const double dx = wrapped_delta(ax - bx, lx_);
  const double dy = wrapped_delta(ay - by, ly_);
  return std::sqrt(dx * dx + dy * dy);
}

void LatticeGeometry::check(SiteIndex s) const {
  if (s.value >= num_sites())
    throw invalid_argument("site index " + std::to_string(s.value) + " out of range");
}
void LatticeGeometry::check(LinkIndex l) const {
  if (l.value >= num_links())
    throw invalid_argument("link index " + std::to_string(l.value) + " out of range");
}
void LatticeGeometry::check(PlaquetteIndex p) const {
  if (p.value >= num_plaquettes())
    throw invalid_argument("plaquette index " + std::to_string(p.value) + " out of range");
}
void LatticeGeometry::check(MatterIndex m) const {
  if (m.value >= num_matter())
    throw invalid_argument("matter index " + std::to_string(m.value) + " out of range");
}

int partner_leg(Pairing p, int leg) {
  static constexpr int table[3][4] = {
      {1, 0, 3, 2},  // (12)(34)
      {2, 3, 0, 1},  // (13)(24)
      {3, 2, 1, 0},  // (14)(23)
  };
  return table[static_cast<int>(p)][leg];
}

const char* pairing_name(Pairing p) {
  switch (p) {
    case Pairing::P12_34: return "(12)(34)";
    case Pairing::P13_24: return "(13)(24)";
    case Pairing::P14_23: return "(14)(23)";
  }
  return "?";
}

}  // namespace cgs
