#include "ckn/dense.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>

#include "ckn/error.hpp"

namespace ckn {

DenseLines decompose_dense(const Box& box, const Direction& e) {
  auto lines = decompose(box, e);
  DenseLines out;
  out.reserve(lines.size());
  for (const auto& line : lines) {
    DenseLine dl;
    dl.parity = line.parity;
    dl.cells.reserve(line.points.size());
    for (const auto& pt : line.points) dl.cells.push_back(static_cast<std::int32_t>(box.index_of(pt)));
    out.push_back(std::move(dl));
  }
  return out;
}

BoxWorkspace::BoxWorkspace(const Box& b) : box(b) {
  const std::int64_t vol = box.volume();
  dist.resize(static_cast<std::size_t>(vol));
  strides.resize(static_cast<std::size_t>(box.n));
  std::int64_t s = 1;
  for (int k = 0; k < box.n; ++k) {
    strides[static_cast<std::size_t>(k)] = s;
    s *= box.side();
  }
  for (std::int64_t i = 0; i < vol; ++i) {
    dist[static_cast<std::size_t>(i)] =
        static_cast<std::int32_t>(distance_to_origin(box.point_of(i)));
  }
  for (const auto& e : directions(box.n)) lines.push_back(decompose_dense(box, e));
}

std::vector<double> BoxWorkspace::weight_vector(double s) const {
  std::vector<double> w(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) w[i] = weight_at_distance(dist[i], s);
  return w;
}

std::vector<double> to_dense(const LatticeFunction& u, const Box& box) {
  if (u.dim() != box.n) throw Error("DimensionMismatch", "to_dense: function/box dimension mismatch");
  std::vector<double> v(static_cast<std::size_t>(box.volume()), 0.0);
  for (const auto& [x, val] : u.entries()) {
    if (!box.contains(x)) throw Error("SupportEscaped", "to_dense: support outside the box");
    v[static_cast<std::size_t>(box.index_of(x))] = val;
  }
  return v;
}

LatticeFunction from_dense(const std::vector<double>& values, const Box& box) {
  LatticeFunction u(box.n);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) u.set(box.point_of(static_cast<std::int64_t>(i)), values[i]);
  }
  return u;
}

double dense_weighted_power_sum(const std::vector<double>& u, const std::vector<double>& w,
                                double p, Exec ex) {
  return reduce_sum(
      static_cast<std::int64_t>(u.size()),
      [&](std::int64_t i) {
        const auto k = static_cast<std::size_t>(i);
        return w[k] * pow_abs(u[k], p);
      },
      ex);
}

namespace {

// Decode coordinate k of cell i without materializing the point.
inline int coord_of(std::int64_t i, int k, int side, const std::vector<std::int64_t>& strides,
                    int radius) {
  return static_cast<int>((i / strides[static_cast<std::size_t>(k)]) % side) - radius;
}

}  // namespace

double dense_d1p_energy(const std::vector<double>& u, const Box& box, double p, Exec ex) {
  const int side = box.side();
  const int L = box.radius;
  std::vector<std::int64_t> strides(static_cast<std::size_t>(box.n));
  std::int64_t s = 1;
  for (int k = 0; k < box.n; ++k) {
    strides[static_cast<std::size_t>(k)] = s;
    s *= side;
  }
  // Each undirected edge with an endpoint in the box is visited exactly once:
  // from its lower endpoint along +e_k, plus the lower-face boundary edges.
  const double half = reduce_sum(
      static_cast<std::int64_t>(u.size()),
      [&](std::int64_t i) {
        const double ui = u[static_cast<std::size_t>(i)];
        detail::Neumaier acc;
        for (int k = 0; k < box.n; ++k) {
          const int c = coord_of(i, k, side, strides, L);
          const double up =
              (c == L) ? 0.0 : u[static_cast<std::size_t>(i + strides[static_cast<std::size_t>(k)])];
          acc.add(pow_abs(up - ui, p));
          if (c == -L) acc.add(pow_abs(ui, p));
        }
        return acc.value();
      },
      ex);
  return 2.0 * half;
}

void dense_p_laplacian(const std::vector<double>& u, const Box& box, double p,
                       std::vector<double>& out, Exec ex) {
  const int side = box.side();
  const int L = box.radius;
  std::vector<std::int64_t> strides(static_cast<std::size_t>(box.n));
  std::int64_t s = 1;
  for (int k = 0; k < box.n; ++k) {
    strides[static_cast<std::size_t>(k)] = s;
    s *= side;
  }
  out.assign(u.size(), 0.0);
  for_each_index(
      static_cast<std::int64_t>(u.size()),
      [&](std::int64_t i) {
        const double ui = u[static_cast<std::size_t>(i)];
        detail::Neumaier acc;
        for (int k = 0; k < box.n; ++k) {
          const int c = coord_of(i, k, side, strides, L);
          const std::int64_t st = strides[static_cast<std::size_t>(k)];
          const double up = (c == L) ? 0.0 : u[static_cast<std::size_t>(i + st)];
          const double um = (c == -L) ? 0.0 : u[static_cast<std::size_t>(i - st)];
          acc.add(phi_p(up - ui, p));
          acc.add(phi_p(um - ui, p));
        }
        out[static_cast<std::size_t>(i)] = acc.value();
      },
      ex);
}

void one_step_dense(const std::vector<double>& in, std::vector<double>& out,
                    const DenseLines& lines, Exec ex) {
  out.resize(in.size());
  std::atomic<bool> escaped{false};
  for_each_index(
      static_cast<std::int64_t>(lines.size()),
      [&](std::int64_t li) {
        const DenseLine& line = lines[static_cast<std::size_t>(li)];
        const int m = static_cast<int>(line.cells.size());
        thread_local std::vector<double> vals;
        vals.clear();
        for (int s = 0; s < m; ++s) {
          const double v = in[static_cast<std::size_t>(line.cells[static_cast<std::size_t>(s)])];
          if (v != 0.0) vals.push_back(v);
        }
        for (int s = 0; s < m; ++s) out[static_cast<std::size_t>(line.cells[static_cast<std::size_t>(s)])] = 0.0;
        std::sort(vals.begin(), vals.end(), std::greater<double>());
        for (int j = 0; j < static_cast<int>(vals.size()); ++j) {
          // Doubled positions run from -(m-1) to m-1 in steps of 2; slot of T
          // is (T + m - 1)/2.
          const int T = placement_doubled_position(j, line.parity);
          const int slot = (T + m - 1) / 2;
          if (slot < 0 || slot >= m) {
            escaped.store(true, std::memory_order_relaxed);
            return;
          }
          out[static_cast<std::size_t>(line.cells[static_cast<std::size_t>(slot)])] =
              vals[static_cast<std::size_t>(j)];
        }
      },
      ex);
  if (escaped.load()) {
    throw Error("SupportEscaped", "one_step: placement left the box line segment");
  }
}

}  // namespace ckn
