#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ckn/exec.hpp"
#include "ckn/lattice.hpp"

namespace ckn {

/// A finitely supported real-valued function on Z^N, stored sparsely.
/// Entries with value exactly 0 are never kept, so support() is the key set.
class LatticeFunction {
public:
  LatticeFunction() = default;
  explicit LatticeFunction(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  double at(const LatticePoint& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? 0.0 : it->second;
  }
  void set(const LatticePoint& x, double v);
  const std::map<LatticePoint, double>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const LatticeFunction& a, const LatticeFunction& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

private:
  int dim_ = 1;
  std::map<LatticePoint, double> entries_;
};

/// Level-set counts of |u|: counts[i] = #{x : |u(x)| > thresholds[i]} at every
/// distinct nonzero |value| (ascending). Equality of profiles is
/// equimeasurability.
struct DistributionProfile {
  std::vector<double> thresholds;
  std::vector<std::int64_t> counts;
  std::int64_t support_size = 0;

  std::int64_t count_above(double t) const;
  friend bool operator==(const DistributionProfile&, const DistributionProfile&) = default;
};

/// Weighted norm (sum_x mu_{ap}(x)|u(x)|^p)^{1/p}; for p = infinity,
/// sup_x mu_a(x)|u(x)|. Requires p >= 1.
double lp_norm(const LatticeFunction& u, double p, double a, Exec ex = default_exec());

/// (sum_{y~x} |u(y)-u(x)|^p)^{1/p}, the p-norm of the gradient at x.
double grad_norm_at(const LatticeFunction& u, const LatticePoint& x, double p);

/// (sum_x sum_{y~x} mu_{ap}(x)|u(y)-u(x)|^p)^{1/p}; every undirected edge
/// contributes once from each endpoint with that endpoint's weight.
double d1p_norm(const LatticeFunction& u, double p, double a, Exec ex = default_exec());

/// Discrete p-Laplacian sum_{y~x}|u(y)-u(x)|^{p-2}(u(y)-u(x)), defined on
/// support(u) and its one-ring, zero elsewhere. Requires p > 1.
LatticeFunction p_laplacian(const LatticeFunction& u, double p);

DistributionProfile distribution(const LatticeFunction& u);

bool is_nonnegative(const LatticeFunction& u);

/// t*u.
LatticeFunction scale(const LatticeFunction& u, double t);

/// alpha*x + y.
LatticeFunction axpy(double alpha, const LatticeFunction& x, const LatticeFunction& y);

/// Support points together with their one-ring, in sorted order.
std::vector<LatticePoint> support_with_one_ring(const LatticeFunction& u);

/// Smallest L with support(u) inside the l-infinity cube of radius L.
int support_radius(const LatticeFunction& u);

}  // namespace ckn
