#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ckn/dense.hpp"
#include "ckn/function.hpp"
#include "ckn/params.hpp"

namespace ckn {

/// Projected-descent configuration. Boxes are solved in order; the run stops
/// early once consecutive box energies stabilize below tol_exhaust.
struct SolverConfig {
  std::vector<int> box_radii = {8, 16, 24};
  double step = 0.5;             // initial trial step, adapted during the run
  double tol_energy = 1e-10;     // relative energy-change stop per box
  double tol_exhaust = 1e-3;     // relative box-to-box stabilization
  std::int64_t max_iters = 100000;  // accepted-step cap per box
  std::uint64_t seed = 0;        // initial-guess jitter seed
  std::int64_t rearrange_every = 1;  // sweep period (iterations)
  std::int64_t max_sweeps = 0;   // 0 -> rearrangement default per box
};

struct BoxSummary {
  int radius = 0;
  double energy = 0;
  std::int64_t iterations = 0;
  std::int64_t sweeps = 0;
};

/// Deterministic work counters; these go into reports instead of wall-clock
/// times so identical runs produce identical reports.
struct WorkCounters {
  std::int64_t objective_evals = 0;
  std::int64_t gradient_evals = 0;
  std::int64_t sweeps = 0;
};

struct MinimizeResult {
  LatticeFunction u;          // normalized minimizer on the final box
  double energy = 0;          // S estimate ||u||_{D1p}^p, or the K product
  std::vector<BoxSummary> per_box;
  bool converged = false;
  double constraint_norm = 0;  // recomputed at return; 1 to ~1e-12
  WorkCounters work;
};

/// Minimizes ||u||_{D^{1,p}}^p over {||u||_{l^q_b} = 1, u >= 0} by projected
/// gradient descent with periodic Schwarz-rearrangement projection, over an
/// exhausting family of boxes.
MinimizeResult minimize_s(const SParams& sp, const SolverConfig& cfg, Exec ex = default_exec());

/// Same scheme for ||u||_{D^{1,p}}^theta ||u||_{l^r}^{1-theta} under
/// ||u||_{l^q} = 1. theta = 1 degenerates to the S-objective (b = 0) and
/// theta = 0 drops the gradient factor.
MinimizeResult minimize_k(const KParams& kp, const SolverConfig& cfg, Exec ex = default_exec());

struct DescentTrial {
  std::vector<double> u;
  double objective = 0;
  bool accepted = false;
};

/// One projected-gradient trial: move against the gradient, clip negatives,
/// renormalize to the constraint sphere, accept iff the objective decreased.
/// Backtracking (halving down to the 1e-14 floor) is the caller's loop.
DescentTrial descent_step(const std::vector<double>& u, double current_objective,
                          const std::vector<double>& gradient, double step,
                          const std::function<double(const std::vector<double>&)>& objective,
                          const std::function<double(const std::vector<double>&)>& constraint_norm);

}  // namespace ckn
