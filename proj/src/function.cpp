#include "ckn/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ckn/error.hpp"

namespace ckn {

void LatticeFunction::set(const LatticePoint& x, double v) {
  if (x.dim() != dim_) {
    throw Error("DimensionMismatch", "LatticeFunction::set: point dimension " +
                                         std::to_string(x.dim()) + " != " + std::to_string(dim_));
  }
  if (v == 0.0) {
    entries_.erase(x);
  } else {
    entries_[x] = v;
  }
}

std::int64_t DistributionProfile::count_above(double t) const {
  if (t < 0.0) t = 0.0;
  // counts[i] applies on [thresholds[i], thresholds[i+1]); below the smallest
  // threshold the count is the support size.
  auto it = std::upper_bound(thresholds.begin(), thresholds.end(), t);
  if (it == thresholds.begin()) return support_size;
  const std::size_t i = static_cast<std::size_t>(it - thresholds.begin()) - 1;
  return counts[i];
}

namespace {

std::vector<std::pair<const LatticePoint*, double>> entry_list(const LatticeFunction& u) {
  std::vector<std::pair<const LatticePoint*, double>> v;
  v.reserve(u.support_size());
  for (const auto& [x, val] : u.entries()) v.emplace_back(&x, val);
  return v;
}

void require_p_ge1(double p, const char* who) {
  if (!(p >= 1.0)) throw Error("InvalidParameter", std::string(who) + ": requires p >= 1");
}

}  // namespace

double lp_norm(const LatticeFunction& u, double p, double a, Exec ex) {
  if (std::isinf(p)) {
    auto entries = entry_list(u);
    return reduce_max(
        static_cast<std::int64_t>(entries.size()),
        [&](std::int64_t i) {
          const auto& [x, v] = entries[static_cast<std::size_t>(i)];
          return weight(*x, a) * std::abs(v);
        },
        ex);
  }
  require_p_ge1(p, "lp_norm");
  auto entries = entry_list(u);
  if (entries.empty()) return 0.0;
  const double s = reduce_sum(
      static_cast<std::int64_t>(entries.size()),
      [&](std::int64_t i) {
        const auto& [x, v] = entries[static_cast<std::size_t>(i)];
        return weight(*x, a * p) * pow_abs(v, p);
      },
      ex);
  return std::pow(s, 1.0 / p);
}

double grad_norm_at(const LatticeFunction& u, const LatticePoint& x, double p) {
  require_p_ge1(p, "grad_norm_at");
  const double ux = u.at(x);
  detail::Neumaier acc;
  for (const auto& y : neighbors(x, u.dim())) acc.add(pow_abs(u.at(y) - ux, p));
  return std::pow(acc.value(), 1.0 / p);
}

std::vector<LatticePoint> support_with_one_ring(const LatticeFunction& u) {
  std::set<LatticePoint> pts;
  for (const auto& [x, v] : u.entries()) {
    pts.insert(x);
    for (auto& y : neighbors(x, u.dim())) pts.insert(std::move(y));
  }
  return {pts.begin(), pts.end()};
}

double d1p_norm(const LatticeFunction& u, double p, double a, Exec ex) {
  require_p_ge1(p, "d1p_norm");
  if (u.empty()) return 0.0;
  const auto pts = support_with_one_ring(u);
  const double s = reduce_sum(
      static_cast<std::int64_t>(pts.size()),
      [&](std::int64_t i) {
        const LatticePoint& x = pts[static_cast<std::size_t>(i)];
        const double ux = u.at(x);
        detail::Neumaier acc;
        for (const auto& y : neighbors(x, u.dim())) acc.add(pow_abs(u.at(y) - ux, p));
        return weight(x, a * p) * acc.value();
      },
      ex);
  return std::pow(s, 1.0 / p);
}

LatticeFunction p_laplacian(const LatticeFunction& u, double p) {
  if (!(p > 1.0)) throw Error("InvalidParameter", "p_laplacian: requires p > 1");
  LatticeFunction out(u.dim());
  for (const auto& x : support_with_one_ring(u)) {
    const double ux = u.at(x);
    detail::Neumaier acc;
    for (const auto& y : neighbors(x, u.dim())) acc.add(phi_p(u.at(y) - ux, p));
    out.set(x, acc.value());
  }
  return out;
}

DistributionProfile distribution(const LatticeFunction& u) {
  DistributionProfile prof;
  prof.support_size = static_cast<std::int64_t>(u.support_size());
  std::vector<double> vals;
  vals.reserve(u.support_size());
  for (const auto& [x, v] : u.entries()) vals.push_back(std::abs(v));
  std::sort(vals.begin(), vals.end());
  std::int64_t below = 0;  // #{ |u| <= current threshold }
  for (std::size_t i = 0; i < vals.size();) {
    std::size_t j = i;
    while (j < vals.size() && vals[j] == vals[i]) ++j;
    below += static_cast<std::int64_t>(j - i);
    prof.thresholds.push_back(vals[i]);
    prof.counts.push_back(prof.support_size - below);
    i = j;
  }
  return prof;
}

bool is_nonnegative(const LatticeFunction& u) {
  for (const auto& [x, v] : u.entries()) {
    if (!(v >= 0.0)) return false;
  }
  return true;
}

LatticeFunction scale(const LatticeFunction& u, double t) {
  LatticeFunction out(u.dim());
  if (t == 0.0) return out;
  for (const auto& [x, v] : u.entries()) out.set(x, t * v);
  return out;
}

LatticeFunction axpy(double alpha, const LatticeFunction& x, const LatticeFunction& y) {
  if (x.dim() != y.dim()) throw Error("DimensionMismatch", "axpy: dimension mismatch");
  LatticeFunction out = y;
  for (const auto& [pt, v] : x.entries()) out.set(pt, alpha * v + out.at(pt));
  return out;
}

int support_radius(const LatticeFunction& u) {
  int r = 0;
  for (const auto& [x, v] : u.entries()) {
    for (int c : x.coords) r = std::max(r, std::abs(c));
  }
  return r;
}

}  // namespace ckn
