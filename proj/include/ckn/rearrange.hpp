#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ckn/dense.hpp"
#include "ckn/error.hpp"
#include "ckn/function.hpp"
#include "ckn/lattice.hpp"

namespace ckn {

/// Sweep schedule for the iterated rearrangement. `order` must be a
/// permutation of directions(N); max_sweeps == 0 selects the default
/// 10 * N^2 * (2L+1).
struct SweepConfig {
  std::int64_t max_sweeps = 0;
  std::vector<Direction> order;
};

/// Thrown when the sweep cap is reached without an exact fixed point. Carries
/// the outputs of the last two sweeps.
class NonConvergence : public Error {
public:
  NonConvergence(std::string what, LatticeFunction before_sweep, LatticeFunction after_sweep)
      : Error("NonConvergence", what),
        before(std::move(before_sweep)),
        after(std::move(after_sweep)) {}

  LatticeFunction before;
  LatticeFunction after;
};

/// One-dimensional decreasing rearrangement. Keys are doubled positions
/// 2x (even for lines indexed by Z, odd for Z + 1/2); values must be >= 0.
/// The sorted values f1 >= f2 >= ... are placed at 0, +1, -1, +2, -2, ...
/// (integer) or +1/2, -1/2, +3/2, -3/2, ... (half-integer); zeros are dropped.
std::map<int, double> rearrange_1d(const std::map<int, double>& doubled_values, Parity parity);

/// One-step rearrangement R_e: every line of decompose(box, e) rearranged
/// independently. Requires u >= 0 and support(u) inside the box.
LatticeFunction one_step(const LatticeFunction& u, const Direction& e, const Box& box,
                         Exec ex = default_exec());

struct SweepStats {
  std::int64_t sweeps = 0;  // including the final verification sweep
};

/// The discrete Schwarz rearrangement u*: full sweeps over the direction
/// order until a sweep changes nothing. Throws NonConvergence when
/// max_sweeps is exhausted first.
LatticeFunction schwarz(const LatticeFunction& u, const Box& box, const SweepConfig& cfg = {},
                        SweepStats* stats = nullptr, Exec ex = default_exec());

/// True iff every one-step rearrangement leaves u unchanged.
bool is_schwarz_symmetric(const LatticeFunction& u, const Box& box, Exec ex = default_exec());

namespace detail {

std::int64_t default_max_sweeps(const Box& box);

/// Dense-path Schwarz rearrangement over precomputed decompositions; returns
/// the sweep count (including the final verification sweep).
std::int64_t schwarz_dense(std::vector<double>& values, const BoxWorkspace& ws,
                           std::int64_t max_sweeps, Exec ex);

}  // namespace detail

}  // namespace ckn
