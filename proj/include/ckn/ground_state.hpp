#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ckn/function.hpp"
#include "ckn/minimize.hpp"
#include "ckn/params.hpp"

namespace ckn {

/// Delta_p v + mu_{qb} v^{q-1} = 0.
struct SEquation {
  double p = 2, q = 2, b = 0;
};

/// lambda1 Delta_p v - lambda2 v^{r-1} + v^{q-1} = 0; an absent lambda means
/// the corresponding term is omitted (theta degeneration).
struct KEquation {
  double p = 2, q = 2, r = 2;
  std::optional<double> lambda1, lambda2;
};

using EllipticEquation = std::variant<SEquation, KEquation>;

struct Residual {
  double l2 = 0;
  double rel = 0;
  bool zero_forcing = false;
};

/// Pointwise l2 residual of the equation over an explicit domain (the points
/// where the truncated equation is asserted; outside them v carries Dirichlet
/// zeros). rel divides by the l2 norm of the forcing term mu_{qb} v^{q-1}
/// (resp. v^{q-1}).
Residual el_residual(const LatticeFunction& v, const EllipticEquation& eq,
                     const std::vector<LatticePoint>& domain);

/// Same with domain = support(v) and its one-ring.
Residual el_residual(const LatticeFunction& v, const EllipticEquation& eq);

/// All points of the box, in index order.
std::vector<LatticePoint> box_points(const Box& box);

struct GroundState {
  LatticeFunction v;
  std::optional<double> lambda1, lambda2;
  double residual_l2 = 0;
  double residual_rel = 0;
  double scale_t = 1;      // v = scale_t * minimizer
  double min_interior = 0; // smallest value at distance >= 1 from the box faces
  EllipticEquation equation;

  /// Multiplier accessors; requesting a dropped-term multiplier throws
  /// DegenerateTheta.
  double multiplier1() const;
  double multiplier2() const;
};

/// Scales a converged S-minimizer into a solution of
/// Delta_p v + mu_{qb} v^{q-1} = 0 (scaling t^{q-p} = S/2) and evaluates the
/// residual over the solver box.
GroundState ground_state_s(const MinimizeResult& res, const SParams& sp,
                           Exec ex = default_exec());

/// Ground state for lambda1 Delta_p v - lambda2 v^{r-1} + v^{q-1} = 0 from a
/// converged K-minimizer. For theta in (0,1): v = u with lambda1 = 2*theta/E,
/// lambda2 = (1-theta)*B^{-r}; theta = 1 rescales to the unit-coefficient
/// equation (matching the S pipeline); theta = 0 drops the gradient term.
GroundState ground_state_k(const MinimizeResult& res, const KParams& kp,
                           Exec ex = default_exec());

}  // namespace ckn
