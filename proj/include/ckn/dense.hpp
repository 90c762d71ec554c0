#pragma once

#include <cstdint>
#include <vector>

#include "ckn/exec.hpp"
#include "ckn/function.hpp"
#include "ckn/lattice.hpp"

namespace ckn {

/// A line of a box decomposition in dense-index form: cell indices ordered by
/// increasing <e,x>. Box line segments are symmetric around position 0, so the
/// first k placement slots always stay inside the segment.
struct DenseLine {
  Parity parity = Parity::integer;
  std::vector<std::int32_t> cells;
};

/// All lines of the box for one direction.
using DenseLines = std::vector<DenseLine>;

DenseLines decompose_dense(const Box& box, const Direction& e);

/// Per-box caches shared by the dense kernels: cell distances, per-direction
/// line decompositions and index strides.
struct BoxWorkspace {
  Box box;
  std::vector<std::int32_t> dist;        // d(x) per cell
  std::vector<DenseLines> lines;         // one entry per directions(box.n)
  std::vector<std::int64_t> strides;     // strides[k] = side^k

  explicit BoxWorkspace(const Box& b);

  /// mu_s per cell.
  std::vector<double> weight_vector(double s) const;
};

std::vector<double> to_dense(const LatticeFunction& u, const Box& box);
LatticeFunction from_dense(const std::vector<double>& values, const Box& box);

/// sum_i w[i]*|u[i]|^p (deterministic blocked reduction).
double dense_weighted_power_sum(const std::vector<double>& u, const std::vector<double>& w,
                                double p, Exec ex = default_exec());

/// ||u||_{D^{1,p}}^p with unit weights: every undirected edge with an endpoint
/// in the box counted once from each endpoint; u is zero outside the box.
double dense_d1p_energy(const std::vector<double>& u, const Box& box, double p,
                        Exec ex = default_exec());

/// out[i] = Delta_p u at cell i (zero Dirichlet data outside the box).
void dense_p_laplacian(const std::vector<double>& u, const Box& box, double p,
                       std::vector<double>& out, Exec ex = default_exec());

/// Doubled position of the j-th largest value under the 1-D placement rule:
/// integer lines fill 0, +1, -1, +2, -2, ...; half-integer lines fill
/// +1/2, -1/2, +3/2, -3/2, ... (returned doubled).
inline int placement_doubled_position(int j, Parity parity) {
  if (parity == Parity::integer) {
    if (j == 0) return 0;
    return (j % 2 == 1) ? j + 1 : -j;
  }
  return (j % 2 == 0) ? j + 1 : -j;
}

/// One-step rearrangement on dense values: every line rearranged
/// independently; lines are disjoint so they may run in parallel.
void one_step_dense(const std::vector<double>& in, std::vector<double>& out,
                    const DenseLines& lines, Exec ex = default_exec());

}  // namespace ckn
