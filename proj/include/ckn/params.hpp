#pragma once

#include "ckn/exec.hpp"
#include "ckn/function.hpp"

namespace ckn {

enum class Criticality { critical, supercritical };

/// Critical exponent q* solving
///   1/q* + b/N = theta*(1/p + (a-1)/N) + (1-theta)*(1/r + c/N).
/// Throws InfeasibleBalance when the right-hand side minus b/N is <= 0.
double critical_q(int N, double p, double r, double a, double b, double c, double theta);

/// Full parameter tuple of the weighted interpolation inequality
///   ||u||_{l^q_b} <= C ||u||_{D^{1,p}_a}^theta ||u||_{l^r_c}^{1-theta}.
struct CknParams {
  int N = 1;
  double p = 2, q = 2, r = 2;
  double a = 0, b = 0, c = 0;
  double theta = 1;
  double q_star = 0;                                      // derived
  Criticality criticality = Criticality::critical;       // derived

  /// Validates every hypothesis and fills the derived fields. Violations are
  /// reported by name; q < q* is rejected as "Subcritical".
  static CknParams validated(int N, double p, double q, double r, double a, double b, double c,
                             double theta);
};

/// Parameters of the S-problem: theta = 1, a = c = 0,
/// N >= 1, 1 < p < N, -1 <= b <= 0, q > q* = Np/(N-p-pb) > 1.
struct SParams {
  int N = 3;
  double p = 2;
  double b = 0;
  double q = 0;
  double q_star = 0;  // derived

  static SParams validated(int N, double p, double b, double q);
};

/// Parameters of the K-problem: a = b = c = 0,
/// N >= 1, p, r > 1, 0 <= theta <= 1, 1/q* = theta(1/p - 1/N) + (1-theta)/r,
/// q > q* > 1.
struct KParams {
  int N = 2;
  double p = 2;
  double r = 2;
  double q = 0;
  double theta = 0.5;
  double q_star = 0;  // derived

  static KParams validated(int N, double p, double r, double q, double theta);
};

/// (||u||_{D^{1,p}_a}^theta * ||u||_{l^r_c}^{1-theta}) / ||u||_{l^q_b}.
/// The inequality asserts this is bounded below by 1/C > 0. The norm whose
/// exponent degenerates (theta = 0 or 1) is not computed.
double quotient(const LatticeFunction& u, const CknParams& params, Exec ex = default_exec());

}  // namespace ckn
