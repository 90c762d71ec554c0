#include "ckn/ground_state.hpp"

#include <cmath>
#include <limits>

#include "ckn/error.hpp"
#include "ckn/rearrange.hpp"

namespace ckn {

namespace {

double laplacian_at(const LatticeFunction& v, const LatticePoint& x, double p) {
  const double vx = v.at(x);
  detail::Neumaier acc;
  for (const auto& y : neighbors(x, v.dim())) acc.add(phi_p(v.at(y) - vx, p));
  return acc.value();
}

struct PointwiseEq {
  double lhs = 0;
  double forcing = 0;
};

PointwiseEq evaluate_at(const LatticeFunction& v, const EllipticEquation& eq,
                        const LatticePoint& x) {
  PointwiseEq out;
  if (const auto* s = std::get_if<SEquation>(&eq)) {
    out.forcing = weight(x, s->q * s->b) * phi_p(v.at(x), s->q);
    out.lhs = laplacian_at(v, x, s->p) + out.forcing;
  } else {
    const auto& k = std::get<KEquation>(eq);
    out.forcing = phi_p(v.at(x), k.q);
    double lhs = out.forcing;
    if (k.lambda1.has_value()) lhs += *k.lambda1 * laplacian_at(v, x, k.p);
    if (k.lambda2.has_value()) lhs -= *k.lambda2 * phi_p(v.at(x), k.r);
    out.lhs = lhs;
  }
  return out;
}

}  // namespace

std::vector<LatticePoint> box_points(const Box& box) {
  std::vector<LatticePoint> pts;
  pts.reserve(static_cast<std::size_t>(box.volume()));
  for (std::int64_t i = 0; i < box.volume(); ++i) pts.push_back(box.point_of(i));
  return pts;
}

Residual el_residual(const LatticeFunction& v, const EllipticEquation& eq,
                     const std::vector<LatticePoint>& domain) {
  detail::Neumaier res2;
  detail::Neumaier force2;
  for (const auto& x : domain) {
    const PointwiseEq pe = evaluate_at(v, eq, x);
    res2.add(pe.lhs * pe.lhs);
    force2.add(pe.forcing * pe.forcing);
  }
  Residual out;
  out.l2 = std::sqrt(res2.value());
  const double fn = std::sqrt(force2.value());
  if (fn == 0.0) {
    out.zero_forcing = true;
    out.rel = 0.0;
  } else {
    out.rel = out.l2 / fn;
  }
  return out;
}

Residual el_residual(const LatticeFunction& v, const EllipticEquation& eq) {
  return el_residual(v, eq, support_with_one_ring(v));
}

double GroundState::multiplier1() const {
  if (!lambda1.has_value()) {
    throw Error("DegenerateTheta", "multiplier1 requested for a dropped term");
  }
  return *lambda1;
}

double GroundState::multiplier2() const {
  if (!lambda2.has_value()) {
    throw Error("DegenerateTheta", "multiplier2 requested for a dropped term");
  }
  return *lambda2;
}

namespace {

double min_interior_value(const LatticeFunction& v, const Box& box) {
  double m = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < box.volume(); ++i) {
    const LatticePoint x = box.point_of(i);
    bool interior = true;
    for (int c : x.coords) {
      if (std::abs(c) > box.radius - 1) {
        interior = false;
        break;
      }
    }
    if (interior) m = std::min(m, v.at(x));
  }
  return std::isfinite(m) ? m : 0.0;
}

void require_converged(const MinimizeResult& res, const char* who) {
  if (!res.converged) throw Error("NotConverged", std::string(who) + ": minimizer did not converge");
  if (res.per_box.empty() || res.u.empty()) {
    throw Error("InvalidParameter", std::string(who) + ": empty minimize result");
  }
}

}  // namespace

GroundState ground_state_s(const MinimizeResult& res, const SParams& sp, Exec ex) {
  require_converged(res, "ground_state_s");
  const double S = res.energy;
  if (std::abs(sp.q - sp.p) < 1e-12) {
    throw Error("ScalingDegenerate", "ground_state_s: q = p leaves no scaling freedom");
  }
  const double t = std::pow(S / 2.0, 1.0 / (sp.q - sp.p));
  GroundState gs;
  gs.v = scale(res.u, t);
  gs.scale_t = t;
  gs.lambda1 = sp.p * S / sp.q;  // Lagrange multiplier of the constrained problem
  gs.lambda2 = std::nullopt;
  gs.equation = SEquation{sp.p, sp.q, sp.b};
  const Box box(sp.N, res.per_box.back().radius);
  const Residual r = el_residual(gs.v, gs.equation, box_points(box));
  gs.residual_l2 = r.l2;
  gs.residual_rel = r.rel;
  gs.min_interior = min_interior_value(gs.v, box);
  (void)ex;
  return gs;
}

GroundState ground_state_k(const MinimizeResult& res, const KParams& kp, Exec ex) {
  require_converged(res, "ground_state_k");
  const Box box(kp.N, res.per_box.back().radius);
  GroundState gs;

  if (kp.theta == 1.0) {
    // Degenerates to Delta_p v + v^{q-1} = 0: rescale exactly as the S
    // pipeline with b = 0 (the reported energy is E^{1/p}).
    const double E = std::pow(res.energy, kp.p);
    if (std::abs(kp.q - kp.p) < 1e-12) {
      throw Error("ScalingDegenerate", "ground_state_k: q = p leaves no scaling freedom");
    }
    const double t = std::pow(E / 2.0, 1.0 / (kp.q - kp.p));
    gs.v = scale(res.u, t);
    gs.scale_t = t;
    gs.lambda1 = 1.0;
    gs.lambda2 = std::nullopt;
    gs.equation = KEquation{kp.p, kp.q, kp.r, 1.0, std::nullopt};
  } else {
    const double B = lp_norm(res.u, kp.r, 0.0, ex);
    gs.v = res.u;
    gs.scale_t = 1.0;
    gs.lambda2 = (1.0 - kp.theta) * std::pow(B, -kp.r);
    if (kp.theta > 0.0) {
      const double E = std::pow(d1p_norm(res.u, kp.p, 0.0, ex), kp.p);
      gs.lambda1 = 2.0 * kp.theta / E;
    } else {
      gs.lambda1 = std::nullopt;
    }
    gs.equation = KEquation{kp.p, kp.q, kp.r, gs.lambda1, gs.lambda2};
  }

  const Residual r = el_residual(gs.v, gs.equation, box_points(box));
  gs.residual_l2 = r.l2;
  gs.residual_rel = r.rel;
  gs.min_interior = min_interior_value(gs.v, box);
  return gs;
}

}  // namespace ckn
