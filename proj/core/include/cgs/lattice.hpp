#pragma once

// Square-lattice geometry of the waffle array on a torus. Sites carry four
// matter wires; links (gauge wires) are shared by two sites.

#include <array>
#include <compare>
#include <cstddef>
#include <utility>

namespace cgs {

template <class Tag>
struct Index {
  std::size_t value = 0;

  constexpr Index() = default;
  constexpr explicit Index(std::size_t v) : value(v) {}
  friend constexpr auto operator<=>(const Index&, const Index&) = default;
};

struct SiteTag {};
struct LinkTag {};
struct MatterTag {};
struct PlaquetteTag {};

using SiteIndex = Index<SiteTag>;
using LinkIndex = Index<LinkTag>;
using MatterIndex = Index<MatterTag>;
using PlaquetteIndex = Index<PlaquetteTag>;

/// Leg order at every site. Legs double as the column index of W.
enum class Leg : int { North = 0, East = 1, South = 2, West = 3 };

inline constexpr int opposite_leg(int leg) { return (leg + 2) % 4; }

enum class LinkOrientation { Horizontal, Vertical };

struct LinkEnd {
  SiteIndex site;
  int leg;
};

struct Coord {
  int x = 0;
  int y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

class LatticeGeometry {
 public:
  int lx() const { return lx_; }
  int ly() const { return ly_; }

  std::size_t num_sites() const { return static_cast<std::size_t>(lx_) * ly_; }
  std::size_t num_links() const { return 2 * num_sites(); }
  std::size_t num_matter() const { return 4 * num_sites(); }
  std::size_t num_plaquettes() const { return num_sites(); }

  /// Periodic wrap of (x, y).
  SiteIndex site(int x, int y) const;
  Coord site_coord(SiteIndex s) const;

  /// Link from (x, y) to its east neighbour.
  LinkIndex horizontal_link(int x, int y) const;
  /// Link from (x, y) to its north neighbour.
  LinkIndex vertical_link(int x, int y) const;
  LinkOrientation orientation(LinkIndex l) const;
  /// Coordinates of the site the link starts from.
  Coord link_origin(LinkIndex l) const;
  /// The two (site, leg) endpoints; first is the origin site.
  std::array<LinkEnd, 2> link_ends(LinkIndex l) const;

  /// Links in N, E, S, W order.
  std::array<LinkIndex, 4> star_links(SiteIndex s) const;
  SiteIndex neighbor(SiteIndex s, int leg) const;

  /// Plaquette whose lower-left corner is (x, y).
  PlaquetteIndex plaquette(int x, int y) const;
  Coord plaquette_coord(PlaquetteIndex p) const;
  /// Boundary links counter-clockwise: bottom, right, top, left.
  std::array<LinkIndex, 4> plaquette_links(PlaquetteIndex p) const;
  /// Corners counter-clockwise from the lower-left.
  std::array<SiteIndex, 4> plaquette_sites(PlaquetteIndex p) const;
  /// The two legs of corner `corner` (0..3) lying on the plaquette boundary.
  std::array<int, 2> plaquette_legs(PlaquetteIndex p, int corner) const;

  MatterIndex matter(SiteIndex s, int slot) const;
  SiteIndex matter_site(MatterIndex m) const { return SiteIndex(m.value / 4); }
  int matter_slot(MatterIndex m) const { return static_cast<int>(m.value % 4); }

  /// Link midpoint in lattice units.
  std::pair<double, double> link_midpoint(LinkIndex l) const;
  /// Minimum-image Euclidean distance between link midpoints on the torus.
  double link_distance(LinkIndex a, LinkIndex b) const;

  void check(SiteIndex s) const;
  void check(LinkIndex l) const;
  void check(PlaquetteIndex p) const;
  void check(MatterIndex m) const;

 private:
  friend LatticeGeometry build_lattice(int lx, int ly);
  LatticeGeometry(int lx, int ly) : lx_(lx), ly_(ly) {}

  int lx_;
  int ly_;
};

/// Periodic lattice; both dimensions must be even and >= 2.
LatticeGeometry build_lattice(int lx, int ly);

/// Leg pairing at a site, named by the 1-based leg pairs.
enum class Pairing : int {
  P12_34 = 0,  // (N,E)(S,W)
  P13_24 = 1,  // (N,S)(E,W): straight through
  P14_23 = 2,  // (N,W)(E,S)
};

inline constexpr std::array<Pairing, 3> kAllPairings{Pairing::P12_34, Pairing::P13_24,
                                                     Pairing::P14_23};

/// Leg paired with `leg` under `p`.
int partner_leg(Pairing p, int leg);
const char* pairing_name(Pairing p);

}  // namespace cgs
