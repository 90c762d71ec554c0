#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "ckn/error.hpp"

namespace ckn {

/// A point of the integer lattice Z^N.
struct LatticePoint {
  std::vector<int> coords;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<int> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  int operator[](int k) const { return coords[static_cast<std::size_t>(k)]; }
  int& operator[](int k) { return coords[static_cast<std::size_t>(k)]; }

  auto operator<=>(const LatticePoint&) const = default;
};

LatticePoint origin(int n);

/// The 2N lattice neighbors of x (points at l1 distance 1).
std::vector<LatticePoint> neighbors(const LatticePoint& x, int n);

/// Combinatorial (graph) distance on Z^N; equals the l1 distance.
std::int64_t distance(const LatticePoint& x, const LatticePoint& y);

/// d(x) = distance to the origin.
std::int64_t distance_to_origin(const LatticePoint& x);

/// Vertex weight mu_s(x) = (1 + d(x))^s; always positive, mu_0 == 1.
double weight(const LatticePoint& x, double s);

/// mu_s for a point at combinatorial distance d from the origin.
double weight_at_distance(std::int64_t d, double s);

/// Finite computational domain: the l-infinity cube {x : max|x_i| <= radius}.
struct Box {
  int n = 1;
  int radius = 0;

  Box() = default;
  Box(int dim, int L);

  int side() const { return 2 * radius + 1; }
  std::int64_t volume() const;
  bool contains(const LatticePoint& x) const;

  /// Row-major cell index with axis 0 fastest; inverse of point_of.
  std::int64_t index_of(const LatticePoint& x) const;
  LatticePoint point_of(std::int64_t idx) const;
};

/// A rearrangement direction e of the set {e_i, (e_i - e_j)/2, (e_i + e_j)/2}.
/// Axes are 0-based; j is only meaningful for the diagonal kinds.
struct Direction {
  enum class Kind { axis, diag_minus, diag_plus };
  Kind kind = Kind::axis;
  int i = 0;
  int j = -1;

  auto operator<=>(const Direction&) const = default;
};

/// The full direction set for dimension n, in the canonical sweep order:
/// all axes first, then for each pair i < j the minus and plus diagonals.
/// Exactly n + 2*C(n,2) = n^2 directions.
std::vector<Direction> directions(int n);

/// 2<e,x>, the doubled position of x along direction e (always an integer).
int doubled_position(const Direction& e, const LatticePoint& x);

enum class Parity { integer, half_integer };

inline Parity parity_of_doubled(int doubled) {
  return (doubled % 2 == 0) ? Parity::integer : Parity::half_integer;
}

/// One equivalence class V_e^alpha restricted to a box: the points of a
/// lattice line parallel to e, ordered by increasing <e,x> (step exactly 1).
struct Line {
  Direction direction;
  std::vector<LatticePoint> points;
  Parity parity = Parity::integer;
};

/// Partition of the box into lines parallel to e. Lines are ordered
/// lexicographically by their transverse coordinates, points within a line by
/// increasing <e,x>.
std::vector<Line> decompose(const Box& box, const Direction& e);

}  // namespace ckn
