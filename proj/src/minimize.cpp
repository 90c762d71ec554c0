#include "ckn/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "ckn/error.hpp"
#include "ckn/rearrange.hpp"

namespace ckn {

namespace {

constexpr double kStepFloor = 1e-14;
constexpr double kStepGrowth = 1.3;
constexpr double kInvariantSlack = 1e-11;  // relative slack on exact-math monotonicity

/// Objective/gradient/constraint bundle on a fixed box.
struct Problem {
  std::function<double(const std::vector<double>&)> objective;
  std::function<void(const std::vector<double>&, std::vector<double>&)> gradient;
  std::function<double(const std::vector<double>&)> constraint_norm;
};

void scale_in_place(std::vector<double>& v, double t) {
  for (double& x : v) x *= t;
}

std::vector<double> initial_guess(const BoxWorkspace& ws, double q_exponent,
                                  const std::vector<double>& cw, std::uint64_t seed, Exec ex) {
  const double L = std::max(1, ws.box.radius);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> u(ws.dist.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = static_cast<double>(ws.dist[i]);
    u[i] = std::exp(-d * d / L) * (1.0 + 0.01 * unif(rng));
  }
  detail::schwarz_dense(u, ws, detail::default_max_sweeps(ws.box), ex);
  const double c = std::pow(dense_weighted_power_sum(u, cw, q_exponent, ex), 1.0 / q_exponent);
  scale_in_place(u, 1.0 / c);
  return u;
}

std::vector<double> embed(const std::vector<double>& u, const Box& from, const Box& to) {
  std::vector<double> out(static_cast<std::size_t>(to.volume()), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != 0.0) {
      out[static_cast<std::size_t>(to.index_of(from.point_of(static_cast<std::int64_t>(i))))] =
          u[i];
    }
  }
  return out;
}

struct BoxRun {
  double energy = 0;
  std::int64_t iterations = 0;
  std::int64_t sweeps = 0;
};

/// Projected descent with periodic rearrangement projection on one box.
BoxRun solve_on_box(std::vector<double>& u, const BoxWorkspace& ws, const Problem& prob,
                    const SolverConfig& cfg, WorkCounters& work, Exec ex) {
  BoxRun run;
  const std::int64_t sweep_cap =
      cfg.max_sweeps > 0 ? cfg.max_sweeps : detail::default_max_sweeps(ws.box);

  double energy = prob.objective(u);
  ++work.objective_evals;
  std::vector<double> g;
  std::vector<double> candidate(u.size());
  double step = cfg.step;

  for (std::int64_t iter = 0; iter < cfg.max_iters; ++iter) {
    if (cfg.rearrange_every > 0 && iter % cfg.rearrange_every == 0) {
      candidate = u;
      const std::int64_t sw = detail::schwarz_dense(candidate, ws, sweep_cap, ex);
      run.sweeps += sw;
      work.sweeps += sw;
      if (std::memcmp(candidate.data(), u.data(), u.size() * sizeof(double)) != 0) {
        const double e_re = prob.objective(candidate);
        ++work.objective_evals;
        if (e_re > energy * (1.0 + kInvariantSlack)) {
          throw Error("InvariantViolation", "rearrangement increased the energy");
        }
        const double c = prob.constraint_norm(candidate);
        if (c < 1.0 - kInvariantSlack) {
          throw Error("InvariantViolation", "rearrangement decreased the constraint norm");
        }
        scale_in_place(candidate, 1.0 / c);
        const double e_new = prob.objective(candidate);
        ++work.objective_evals;
        if (e_new > energy * (1.0 + kInvariantSlack)) {
          throw Error("InvariantViolation", "rearrangement projection increased the energy");
        }
        u.swap(candidate);
        energy = e_new;
      }
    }

    prob.gradient(u, g);
    ++work.gradient_evals;

    double s = step;
    DescentTrial trial;
    for (;;) {
      trial = descent_step(u, energy, g, s, prob.objective, prob.constraint_norm);
      ++work.objective_evals;
      if (trial.accepted) break;
      s *= 0.5;
      if (s < kStepFloor) break;
    }
    if (!trial.accepted) break;  // stationary: every step down to the floor stalls

    const double rel = (energy - trial.objective) / energy;
    u.swap(trial.u);
    energy = trial.objective;
    step = std::min(s * kStepGrowth, 1e6);
    ++run.iterations;
    if (rel < cfg.tol_energy) break;
  }

  // Final symmetrization + renormalization; neither may increase the energy.
  candidate = u;
  const std::int64_t sw = detail::schwarz_dense(candidate, ws, sweep_cap, ex);
  run.sweeps += sw;
  work.sweeps += sw;
  const double c = prob.constraint_norm(candidate);
  scale_in_place(candidate, 1.0 / c);
  const double e_final = prob.objective(candidate);
  ++work.objective_evals;
  if (e_final > energy * (1.0 + kInvariantSlack)) {
    throw Error("InvariantViolation", "final symmetrization increased the energy");
  }
  u.swap(candidate);
  run.energy = e_final;
  return run;
}

void validate_config(const SolverConfig& cfg) {
  if (cfg.box_radii.empty()) throw Error("InvalidParameter", "SolverConfig: box_radii empty");
  for (std::size_t k = 1; k < cfg.box_radii.size(); ++k) {
    if (cfg.box_radii[k] <= cfg.box_radii[k - 1]) {
      throw Error("InvalidParameter", "SolverConfig: box_radii must be strictly increasing");
    }
  }
  if (!(cfg.step > 0.0) || !(cfg.tol_energy > 0.0) || !(cfg.tol_exhaust > 0.0)) {
    throw Error("InvalidParameter", "SolverConfig: steps and tolerances must be positive");
  }
  if (cfg.rearrange_every < 1) {
    throw Error("InvalidParameter", "SolverConfig: rearrange_every must be >= 1");
  }
}

/// Shared exhaustion driver. make_problem builds the callbacks for one box.
MinimizeResult run_exhaustion(
    int dim, double constraint_q, bool weighted_constraint, double weight_exponent,
    const std::function<Problem(const BoxWorkspace&, const std::vector<double>&)>& make_problem,
    const SolverConfig& cfg, Exec ex) {
  validate_config(cfg);
  MinimizeResult result;
  std::vector<double> u;
  Box prev_box;

  for (std::size_t k = 0; k < cfg.box_radii.size(); ++k) {
    const Box box(dim, cfg.box_radii[k]);
    BoxWorkspace ws(box);
    const std::vector<double> cw = ws.weight_vector(weighted_constraint ? weight_exponent : 0.0);

    if (k == 0) {
      u = initial_guess(ws, constraint_q, cw, cfg.seed, ex);
    } else {
      u = embed(u, prev_box, box);
      const double c =
          std::pow(dense_weighted_power_sum(u, cw, constraint_q, ex), 1.0 / constraint_q);
      scale_in_place(u, 1.0 / c);
    }

    const Problem prob = make_problem(ws, cw);
    const BoxRun run = solve_on_box(u, ws, prob, cfg, result.work, ex);
    if (!result.per_box.empty()) {
      const double prev_e = result.per_box.back().energy;
      if (run.energy > prev_e * (1.0 + kInvariantSlack)) {
        throw Error("InvariantViolation", "energy increased under box exhaustion");
      }
    }
    result.per_box.push_back({box.radius, run.energy, run.iterations, run.sweeps});
    prev_box = box;
    result.constraint_norm =
        std::pow(dense_weighted_power_sum(u, cw, constraint_q, ex), 1.0 / constraint_q);

    if (k > 0) {
      const double prev_e = result.per_box[result.per_box.size() - 2].energy;
      if (std::abs(run.energy - prev_e) / prev_e < cfg.tol_exhaust) {
        result.converged = true;
        break;
      }
    }
  }

  result.energy = result.per_box.back().energy;
  result.u = from_dense(u, prev_box);
  if (!is_schwarz_symmetric(result.u, prev_box, ex)) {
    throw Error("InvariantViolation", "minimizer is not Schwarz symmetric");
  }
  return result;
}

}  // namespace

DescentTrial descent_step(const std::vector<double>& u, double current_objective,
                          const std::vector<double>& gradient, double step,
                          const std::function<double(const std::vector<double>&)>& objective,
                          const std::function<double(const std::vector<double>&)>& constraint_norm) {
  DescentTrial trial;
  trial.u.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    trial.u[i] = std::max(0.0, u[i] - step * gradient[i]);
  }
  const double c = constraint_norm(trial.u);
  if (!(c > 0.0) || !std::isfinite(c)) {
    trial.objective = current_objective;
    trial.accepted = false;
    return trial;
  }
  scale_in_place(trial.u, 1.0 / c);
  trial.objective = objective(trial.u);
  trial.accepted = trial.objective < current_objective;
  return trial;
}

MinimizeResult minimize_s(const SParams& sp_in, const SolverConfig& cfg, Exec ex) {
  const SParams sp = SParams::validated(sp_in.N, sp_in.p, sp_in.b, sp_in.q);
  auto make_problem = [&sp, ex](const BoxWorkspace& ws, const std::vector<double>& cw) {
    Problem prob;
    const Box box = ws.box;
    const double p = sp.p;
    const double q = sp.q;
    prob.objective = [box, p, ex](const std::vector<double>& v) {
      return dense_d1p_energy(v, box, p, ex);
    };
    prob.gradient = [box, p, ex](const std::vector<double>& v, std::vector<double>& g) {
      dense_p_laplacian(v, box, p, g, ex);
      const double factor = -2.0 * p;
      for (double& x : g) x *= factor;
    };
    prob.constraint_norm = [&cw, q, ex](const std::vector<double>& v) {
      return std::pow(dense_weighted_power_sum(v, cw, q, ex), 1.0 / q);
    };
    return prob;
  };
  return run_exhaustion(sp.N, sp.q, /*weighted=*/true, sp.q * sp.b, make_problem, cfg, ex);
}

MinimizeResult minimize_k(const KParams& kp_in, const SolverConfig& cfg, Exec ex) {
  const KParams kp = KParams::validated(kp_in.N, kp_in.p, kp_in.r, kp_in.q, kp_in.theta);

  if (kp.theta == 1.0) {
    // The product objective degenerates to the S-objective with b = 0 (a
    // monotone reparametrization), so reuse that machinery exactly and
    // report the K estimate E^{1/p}.
    auto make_problem = [&kp, ex](const BoxWorkspace& ws, const std::vector<double>& cw) {
      Problem prob;
      const Box box = ws.box;
      const double p = kp.p;
      const double q = kp.q;
      prob.objective = [box, p, ex](const std::vector<double>& v) {
        return dense_d1p_energy(v, box, p, ex);
      };
      prob.gradient = [box, p, ex](const std::vector<double>& v, std::vector<double>& g) {
        dense_p_laplacian(v, box, p, g, ex);
        const double factor = -2.0 * p;
        for (double& x : g) x *= factor;
      };
      prob.constraint_norm = [&cw, q, ex](const std::vector<double>& v) {
        return std::pow(dense_weighted_power_sum(v, cw, q, ex), 1.0 / q);
      };
      return prob;
    };
    MinimizeResult res =
        run_exhaustion(kp.N, kp.q, /*weighted=*/false, 0.0, make_problem, cfg, ex);
    for (auto& bs : res.per_box) bs.energy = std::pow(bs.energy, 1.0 / kp.p);
    res.energy = std::pow(res.energy, 1.0 / kp.p);
    return res;
  }

  auto make_problem = [&kp, ex](const BoxWorkspace& ws, const std::vector<double>& cw) {
    Problem prob;
    const Box box = ws.box;
    const double p = kp.p;
    const double q = kp.q;
    const double r = kp.r;
    const double theta = kp.theta;
    const std::vector<double>* ones = &cw;  // cw is all ones for the K-problem
    prob.objective = [box, p, r, theta, ones, ex](const std::vector<double>& v) {
      double val = 1.0;
      if (theta > 0.0) val *= std::pow(dense_d1p_energy(v, box, p, ex), theta / p);
      val *= std::pow(std::pow(dense_weighted_power_sum(v, *ones, r, ex), 1.0 / r), 1.0 - theta);
      return val;
    };
    prob.gradient = [box, p, r, theta, ones, ex](const std::vector<double>& v,
                                                 std::vector<double>& g) {
      const double B = std::pow(dense_weighted_power_sum(v, *ones, r, ex), 1.0 / r);
      if (theta > 0.0) {
        const double E = dense_d1p_energy(v, box, p, ex);
        dense_p_laplacian(v, box, p, g, ex);
        const double cgrad =
            (theta / p) * std::pow(E, theta / p - 1.0) * std::pow(B, 1.0 - theta) * (-2.0 * p);
        const double cmass = (1.0 - theta) * std::pow(E, theta / p) * std::pow(B, 1.0 - theta - r);
        for (std::size_t i = 0; i < v.size(); ++i) {
          g[i] = cgrad * g[i] + cmass * phi_p(v[i], r);
        }
      } else {
        g.resize(v.size());
        const double cmass = std::pow(B, 1.0 - r);
        for (std::size_t i = 0; i < v.size(); ++i) g[i] = cmass * phi_p(v[i], r);
      }
    };
    prob.constraint_norm = [ones, q, ex](const std::vector<double>& v) {
      return std::pow(dense_weighted_power_sum(v, *ones, q, ex), 1.0 / q);
    };
    return prob;
  };
  return run_exhaustion(kp.N, kp.q, /*weighted=*/false, 0.0, make_problem, cfg, ex);
}

}  // namespace ckn
