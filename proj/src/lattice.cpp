#include "ckn/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

namespace ckn {

namespace {

void require_dim(const LatticePoint& x, int n, const char* who) {
  if (x.dim() != n) {
    throw Error("DimensionMismatch", std::string(who) + ": point has dimension " +
                                         std::to_string(x.dim()) + ", expected " +
                                         std::to_string(n));
  }
}

}  // namespace

LatticePoint origin(int n) { return LatticePoint(std::vector<int>(static_cast<std::size_t>(n), 0)); }

std::vector<LatticePoint> neighbors(const LatticePoint& x, int n) {
  require_dim(x, n, "neighbors");
  std::vector<LatticePoint> out;
  out.reserve(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    for (int step : {+1, -1}) {
      LatticePoint y = x;
      y[k] += step;
      out.push_back(std::move(y));
    }
  }
  return out;
}

std::int64_t distance(const LatticePoint& x, const LatticePoint& y) {
  if (x.dim() != y.dim()) {
    throw Error("DimensionMismatch", "distance: points of dimension " + std::to_string(x.dim()) +
                                         " and " + std::to_string(y.dim()));
  }
  std::int64_t d = 0;
  for (int k = 0; k < x.dim(); ++k) d += std::abs(static_cast<std::int64_t>(x[k]) - y[k]);
  return d;
}

std::int64_t distance_to_origin(const LatticePoint& x) {
  std::int64_t d = 0;
  for (int v : x.coords) d += std::abs(static_cast<std::int64_t>(v));
  return d;
}

double weight_at_distance(std::int64_t d, double s) {
  if (s == 0.0) return 1.0;
  return std::pow(1.0 + static_cast<double>(d), s);
}

double weight(const LatticePoint& x, double s) { return weight_at_distance(distance_to_origin(x), s); }

Box::Box(int dim, int L) : n(dim), radius(L) {
  if (dim < 1) throw Error("InvalidParameter", "Box: dimension must be >= 1");
  if (L < 0) throw Error("InvalidParameter", "Box: radius must be >= 0");
}

std::int64_t Box::volume() const {
  std::int64_t v = 1;
  for (int k = 0; k < n; ++k) v *= side();
  return v;
}

bool Box::contains(const LatticePoint& x) const {
  if (x.dim() != n) return false;
  for (int v : x.coords) {
    if (std::abs(v) > radius) return false;
  }
  return true;
}

std::int64_t Box::index_of(const LatticePoint& x) const {
  require_dim(x, n, "Box::index_of");
  std::int64_t idx = 0;
  std::int64_t stride = 1;
  for (int k = 0; k < n; ++k) {
    idx += stride * (x[k] + radius);
    stride *= side();
  }
  return idx;
}

LatticePoint Box::point_of(std::int64_t idx) const {
  LatticePoint x = origin(n);
  for (int k = 0; k < n; ++k) {
    x[k] = static_cast<int>(idx % side()) - radius;
    idx /= side();
  }
  return x;
}

std::vector<Direction> directions(int n) {
  if (n < 1) throw Error("InvalidParameter", "directions: dimension must be >= 1");
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back({Direction::Kind::axis, i, -1});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.push_back({Direction::Kind::diag_minus, i, j});
      out.push_back({Direction::Kind::diag_plus, i, j});
    }
  }
  return out;
}

int doubled_position(const Direction& e, const LatticePoint& x) {
  switch (e.kind) {
    case Direction::Kind::axis:
      return 2 * x[e.i];
    case Direction::Kind::diag_minus:
      return x[e.i] - x[e.j];
    case Direction::Kind::diag_plus:
      return x[e.i] + x[e.j];
  }
  return 0;
}

std::vector<Line> decompose(const Box& box, const Direction& e) {
  if (e.i < 0 || e.i >= box.n || (e.kind != Direction::Kind::axis && (e.j <= e.i || e.j >= box.n))) {
    throw Error("InvalidParameter", "decompose: direction does not fit the box dimension");
  }
  // Transverse key: the coordinates invariant along the line, lexicographic.
  auto key_of = [&](const LatticePoint& x) {
    std::vector<int> key;
    key.reserve(static_cast<std::size_t>(box.n));
    if (e.kind == Direction::Kind::axis) {
      for (int k = 0; k < box.n; ++k) {
        if (k != e.i) key.push_back(x[k]);
      }
    } else {
      // Moving along e_i -+ e_j keeps x_i + x_j (minus) or x_i - x_j (plus) fixed.
      key.push_back(e.kind == Direction::Kind::diag_minus ? x[e.i] + x[e.j] : x[e.i] - x[e.j]);
      for (int k = 0; k < box.n; ++k) {
        if (k != e.i && k != e.j) key.push_back(x[k]);
      }
    }
    return key;
  };

  std::map<std::vector<int>, std::vector<std::pair<int, LatticePoint>>> groups;
  const std::int64_t vol = box.volume();
  for (std::int64_t idx = 0; idx < vol; ++idx) {
    LatticePoint x = box.point_of(idx);
    groups[key_of(x)].emplace_back(doubled_position(e, x), std::move(x));
  }

  std::vector<Line> lines;
  lines.reserve(groups.size());
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Line line;
    line.direction = e;
    line.parity = parity_of_doubled(members.front().first);
    line.points.reserve(members.size());
    for (auto& [pos, pt] : members) {
      if (parity_of_doubled(pos) != line.parity) {
        throw Error("InternalError", "decompose: mixed parity within a line");
      }
      line.points.push_back(std::move(pt));
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace ckn
