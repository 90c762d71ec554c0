#include "ckn/rearrange.hpp"

#include <algorithm>
#include <cstring>
#include <functional>

namespace ckn {

namespace {

void require_admissible(const LatticeFunction& u, const Box& box, const char* who) {
  if (u.dim() != box.n) {
    throw Error("DimensionMismatch", std::string(who) + ": function/box dimension mismatch");
  }
  for (const auto& [x, v] : u.entries()) {
    if (!(v >= 0.0)) throw Error("NegativeValue", std::string(who) + ": function must be nonnegative");
    if (!box.contains(x)) throw Error("SupportEscaped", std::string(who) + ": support outside the box");
  }
}

std::vector<Direction> sweep_order(const SweepConfig& cfg, int n) {
  auto canonical = directions(n);
  if (cfg.order.empty()) return canonical;
  auto sorted = cfg.order;
  std::sort(sorted.begin(), sorted.end());
  auto canon_sorted = canonical;
  std::sort(canon_sorted.begin(), canon_sorted.end());
  if (sorted != canon_sorted) {
    throw Error("InvalidParameter", "SweepConfig::order must be a permutation of directions(N)");
  }
  return cfg.order;
}

}  // namespace

std::map<int, double> rearrange_1d(const std::map<int, double>& doubled_values, Parity parity) {
  std::vector<double> vals;
  vals.reserve(doubled_values.size());
  const int want = (parity == Parity::integer) ? 0 : 1;
  for (const auto& [pos, v] : doubled_values) {
    if (((pos % 2) + 2) % 2 != want) {
      throw Error("InvalidParameter", "rearrange_1d: position parity does not match the line parity");
    }
    if (!(v >= 0.0)) throw Error("NegativeValue", "rearrange_1d: values must be nonnegative");
    if (v != 0.0) vals.push_back(v);
  }
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  std::map<int, double> out;
  for (int j = 0; j < static_cast<int>(vals.size()); ++j) {
    out[placement_doubled_position(j, parity)] = vals[static_cast<std::size_t>(j)];
  }
  return out;
}

LatticeFunction one_step(const LatticeFunction& u, const Direction& e, const Box& box, Exec ex) {
  require_admissible(u, box, "one_step");
  const auto lines = decompose_dense(box, e);
  const auto in = to_dense(u, box);
  std::vector<double> out;
  one_step_dense(in, out, lines, ex);
  return from_dense(out, box);
}

namespace detail {

std::int64_t default_max_sweeps(const Box& box) {
  return 10LL * box.n * box.n * box.side();
}

std::int64_t schwarz_dense(std::vector<double>& values, const BoxWorkspace& ws,
                           std::int64_t max_sweeps, Exec ex) {
  std::vector<double> next(values.size());
  std::vector<double> prev_sweep;
  std::int64_t sweeps = 0;
  for (;;) {
    if (sweeps >= max_sweeps) {
      throw NonConvergence("schwarz: no fixed point within " + std::to_string(max_sweeps) +
                               " sweeps",
                           from_dense(prev_sweep.empty() ? values : prev_sweep, ws.box),
                           from_dense(values, ws.box));
    }
    prev_sweep = values;
    bool changed = false;
    for (const auto& lines : ws.lines) {
      one_step_dense(values, next, lines, ex);
      if (std::memcmp(values.data(), next.data(), values.size() * sizeof(double)) != 0) {
        changed = true;
        values.swap(next);
      }
    }
    ++sweeps;
    if (!changed) return sweeps;
  }
}

}  // namespace detail

LatticeFunction schwarz(const LatticeFunction& u, const Box& box, const SweepConfig& cfg,
                        SweepStats* stats, Exec ex) {
  require_admissible(u, box, "schwarz");
  const auto order = sweep_order(cfg, box.n);
  const std::int64_t cap = cfg.max_sweeps > 0 ? cfg.max_sweeps : detail::default_max_sweeps(box);

  BoxWorkspace ws(box);
  if (!cfg.order.empty()) {
    // Reorder the cached decompositions to the requested sweep order.
    auto canonical = directions(box.n);
    std::vector<DenseLines> reordered;
    reordered.reserve(order.size());
    for (const auto& e : order) {
      const auto it = std::find(canonical.begin(), canonical.end(), e);
      reordered.push_back(std::move(ws.lines[static_cast<std::size_t>(it - canonical.begin())]));
    }
    ws.lines = std::move(reordered);
  }

  auto values = to_dense(u, box);
  const std::int64_t sweeps = detail::schwarz_dense(values, ws, cap, ex);
  if (stats != nullptr) stats->sweeps = sweeps;
  return from_dense(values, box);
}

bool is_schwarz_symmetric(const LatticeFunction& u, const Box& box, Exec ex) {
  require_admissible(u, box, "is_schwarz_symmetric");
  const auto in = to_dense(u, box);
  std::vector<double> out;
  for (const auto& e : directions(box.n)) {
    one_step_dense(in, out, decompose_dense(box, e), ex);
    if (std::memcmp(in.data(), out.data(), in.size() * sizeof(double)) != 0) return false;
  }
  return true;
}

}  // namespace ckn
