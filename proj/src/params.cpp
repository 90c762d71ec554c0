#include "ckn/params.hpp"

#include <cmath>
#include <string>

#include "ckn/error.hpp"

namespace ckn {

namespace {

// Guard against parameter magnitudes where the weighted sums overflow double
// range; artifact policy, not an inequality hypothesis.
constexpr double kMaxMagnitude = 1e6;

void require_finite_range(double v, const char* name) {
  if (!std::isfinite(v) || std::abs(v) > kMaxMagnitude) {
    throw Error("ParameterRange", std::string(name) + " out of supported range");
  }
}

}  // namespace

double critical_q(int N, double p, double r, double a, double b, double c, double theta) {
  if (N < 1) throw Error("InvalidParameter", "critical_q: N must be >= 1");
  const double nn = static_cast<double>(N);
  const double rhs = theta * (1.0 / p + (a - 1.0) / nn) + (1.0 - theta) * (1.0 / r + c / nn);
  const double inv_q = rhs - b / nn;
  if (!(inv_q > 0.0)) {
    throw Error("InfeasibleBalance", "critical_q: balance condition has no positive solution");
  }
  return 1.0 / inv_q;
}

CknParams CknParams::validated(int N, double p, double q, double r, double a, double b, double c,
                               double theta) {
  if (N < 1) throw Error("InvalidParameter", "CknParams: N must be >= 1");
  for (auto [v, name] : {std::pair<double, const char*>{p, "p"}, {q, "q"}, {r, "r"}, {a, "a"},
                         {b, "b"}, {c, "c"}, {theta, "theta"}}) {
    require_finite_range(v, name);
  }
  if (!(p > 1.0)) throw Error("InvalidParameter", "CknParams: requires p > 1");
  if (!(q > 1.0)) throw Error("InvalidParameter", "CknParams: requires q > 1");
  if (!(r > 1.0)) throw Error("InvalidParameter", "CknParams: requires r > 1");
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw Error("InvalidParameter", "CknParams: requires 0 <= theta <= 1");
  }
  const double nn = static_cast<double>(N);
  if (!(1.0 / p + a / nn > 0.0)) throw Error("GradientWeight", "CknParams: requires 1/p + a/N > 0");
  if (!(1.0 / r + c / nn > 0.0)) throw Error("InterpolationWeight", "CknParams: requires 1/r + c/N > 0");
  if (!(b <= theta * a + (1.0 - theta) * c)) {
    throw Error("WeightOrdering", "CknParams: requires b <= theta*a + (1-theta)*c");
  }
  CknParams out{N, p, q, r, a, b, c, theta, 0.0, Criticality::critical};
  out.q_star = critical_q(N, p, r, a, b, c, theta);
  if (q < out.q_star) {
    throw Error("Subcritical", "CknParams: q = " + std::to_string(q) + " < q* = " +
                                   std::to_string(out.q_star));
  }
  out.criticality = (q == out.q_star) ? Criticality::critical : Criticality::supercritical;
  return out;
}

SParams SParams::validated(int N, double p, double b, double q) {
  if (N < 1) throw Error("InvalidParameter", "SParams: N must be >= 1");
  require_finite_range(p, "p");
  require_finite_range(b, "b");
  require_finite_range(q, "q");
  if (!(p > 1.0 && p < static_cast<double>(N))) {
    throw Error("InvalidParameter", "SParams: requires 1 < p < N");
  }
  if (!(b >= -1.0 && b <= 0.0)) throw Error("InvalidParameter", "SParams: requires -1 <= b <= 0");
  SParams out{N, p, b, q, 0.0};
  out.q_star = critical_q(N, p, /*r=*/2.0, /*a=*/0.0, b, /*c=*/0.0, /*theta=*/1.0);
  if (!(out.q_star > 1.0)) throw Error("InvalidParameter", "SParams: requires q* > 1");
  if (!(q > out.q_star)) {
    throw Error("Subcritical", "SParams: requires q > q* = " + std::to_string(out.q_star));
  }
  return out;
}

KParams KParams::validated(int N, double p, double r, double q, double theta) {
  if (N < 1) throw Error("InvalidParameter", "KParams: N must be >= 1");
  require_finite_range(p, "p");
  require_finite_range(r, "r");
  require_finite_range(q, "q");
  require_finite_range(theta, "theta");
  if (!(p > 1.0)) throw Error("InvalidParameter", "KParams: requires p > 1");
  if (!(r > 1.0)) throw Error("InvalidParameter", "KParams: requires r > 1");
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw Error("InvalidParameter", "KParams: requires 0 <= theta <= 1");
  }
  KParams out{N, p, r, q, theta, 0.0};
  out.q_star = critical_q(N, p, r, /*a=*/0.0, /*b=*/0.0, /*c=*/0.0, theta);
  if (!(out.q_star > 1.0)) throw Error("InvalidParameter", "KParams: requires q* > 1");
  if (!(q > out.q_star)) {
    throw Error("Subcritical", "KParams: requires q > q* = " + std::to_string(out.q_star));
  }
  return out;
}

double quotient(const LatticeFunction& u, const CknParams& params, Exec ex) {
  if (u.empty()) throw Error("ZeroFunction", "quotient: u must not be identically zero");
  const double denom = lp_norm(u, params.q, params.b, ex);
  double num = 1.0;
  if (params.theta > 0.0) {
    num *= std::pow(d1p_norm(u, params.p, params.a, ex), params.theta);
  }
  if (params.theta < 1.0) {
    num *= std::pow(lp_norm(u, params.r, params.c, ex), 1.0 - params.theta);
  }
  if (!std::isfinite(num) || !std::isfinite(denom) || denom == 0.0) {
    throw Error("NonFiniteNorm", "quotient: norms must be finite and denominator positive");
  }
  return num / denom;
}

}  // namespace ckn
