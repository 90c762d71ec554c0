#include "ckn/extension.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ckn/error.hpp"

namespace ckn {

QuadratureRule QuadratureRule::gauss_legendre(int order) {
  if (order < 1 || order > 64) {
    throw Error("InvalidParameter", "QuadratureRule: order must be in [1, 64]");
  }
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  // Roots of the Legendre polynomial P_order on [-1,1] by Newton iteration,
  // then mapped to [0,1] with weights normalized to sum 1.
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
    rule.weights[static_cast<std::size_t>(i)] = 0.5 * w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
  }
  return rule;
}

std::vector<double> barycentric_coeffs(std::span<const double> x, int n) {
  if (static_cast<int>(x.size()) != n) {
    throw Error("DimensionMismatch", "barycentric_coeffs: point dimension mismatch");
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error("InvalidParameter", "barycentric_coeffs: point outside the unit cell");
    }
  }
  std::vector<double> c(static_cast<std::size_t>(1) << n, 1.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    double prod = 1.0;
    for (int k = 0; k < n; ++k) {
      const bool bit = (i >> k) & 1u;
      prod *= bit ? x[static_cast<std::size_t>(k)] : (1.0 - x[static_cast<std::size_t>(k)]);
    }
    c[i] = prod;
  }
  return c;
}

double evaluate_extension(const LatticeFunction& u, std::span<const double> x) {
  const int n = u.dim();
  if (static_cast<int>(x.size()) != n) {
    throw Error("DimensionMismatch", "evaluate_extension: point dimension mismatch");
  }
  LatticePoint base = origin(n);
  std::vector<double> local(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double f = std::floor(x[static_cast<std::size_t>(k)]);
    base[k] = static_cast<int>(f);
    local[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] - f;
  }
  const auto coeffs = barycentric_coeffs(local, n);
  detail::Neumaier acc;
  LatticePoint v = base;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (int k = 0; k < n; ++k) v[k] = base[k] + static_cast<int>((i >> k) & 1u);
    if (coeffs[i] != 0.0) acc.add(coeffs[i] * u.at(v));
  }
  return acc.value();
}

namespace {

/// Cells (by lowest corner) having at least one support point as a vertex.
std::vector<LatticePoint> support_cells(const LatticeFunction& u) {
  const int n = u.dim();
  std::set<LatticePoint> cells;
  for (const auto& [x, val] : u.entries()) {
    for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << n); ++mask) {
      LatticePoint base = x;
      for (int k = 0; k < n; ++k) base[k] -= static_cast<int>((mask >> k) & 1u);
      cells.insert(std::move(base));
    }
  }
  return {cells.begin(), cells.end()};
}

struct CellValues {
  std::vector<double> corner;  // 2^n corner values, vertex i bits as above
};

CellValues gather_cell(const LatticeFunction& u, const LatticePoint& base, int n) {
  CellValues cv;
  cv.corner.resize(static_cast<std::size_t>(1) << n);
  LatticePoint v = base;
  for (std::size_t i = 0; i < cv.corner.size(); ++i) {
    for (int k = 0; k < n; ++k) v[k] = base[k] + static_cast<int>((i >> k) & 1u);
    cv.corner[i] = u.at(v);
  }
  return cv;
}

/// Iterates the tensor quadrature grid of one cell, calling f(point01, weight).
template <class F>
void for_each_node(const QuadratureRule& rule, int n, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> pt(static_cast<std::size_t>(n));
  for (;;) {
    double w = 1.0;
    for (int k = 0; k < n; ++k) {
      pt[static_cast<std::size_t>(k)] = rule.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
      w *= rule.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
    }
    f(pt, w);
    int k = 0;
    while (k < n) {
      if (++idx[static_cast<std::size_t>(k)] < rule.order) break;
      idx[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == n) break;
  }
}

double multilinear_value(const CellValues& cv, std::span<const double> x, int n) {
  detail::Neumaier acc;
  for (std::size_t i = 0; i < cv.corner.size(); ++i) {
    if (cv.corner[i] == 0.0) continue;
    double prod = cv.corner[i];
    for (int k = 0; k < n; ++k) {
      const bool bit = (i >> k) & 1u;
      prod *= bit ? x[static_cast<std::size_t>(k)] : (1.0 - x[static_cast<std::size_t>(k)]);
    }
    acc.add(prod);
  }
  return acc.value();
}

/// Squared Euclidean norm of the gradient of the multilinear interpolant.
double multilinear_grad_sq(const CellValues& cv, std::span<const double> x, int n) {
  double sq = 0.0;
  for (int d = 0; d < n; ++d) {
    detail::Neumaier acc;
    for (std::size_t i = 0; i < cv.corner.size(); ++i) {
      if (cv.corner[i] == 0.0) continue;
      double prod = cv.corner[i];
      for (int k = 0; k < n; ++k) {
        const bool bit = (i >> k) & 1u;
        if (k == d) {
          prod *= bit ? 1.0 : -1.0;
        } else {
          prod *= bit ? x[static_cast<std::size_t>(k)] : (1.0 - x[static_cast<std::size_t>(k)]);
        }
      }
      acc.add(prod);
    }
    const double g = acc.value();
    sq += g * g;
  }
  return sq;
}

template <class Integrand>
double integrate_over_support(const LatticeFunction& u, const QuadratureRule& rule,
                              Integrand&& integrand, Exec ex) {
  const int n = u.dim();
  const auto cells = support_cells(u);
  return reduce_sum(
      static_cast<std::int64_t>(cells.size()),
      [&](std::int64_t ci) {
        const CellValues cv = gather_cell(u, cells[static_cast<std::size_t>(ci)], n);
        detail::Neumaier acc;
        for_each_node(rule, n, [&](const std::vector<double>& pt, double w) {
          acc.add(w * integrand(cv, pt));
        });
        return acc.value();
      },
      ex);
}

}  // namespace

double extension_lp_norm(const LatticeFunction& u, double p, const QuadratureRule& rule, Exec ex) {
  if (!(p >= 1.0)) throw Error("InvalidParameter", "extension_lp_norm: requires p >= 1");
  const int n = u.dim();
  const double s = integrate_over_support(
      u, rule,
      [&](const CellValues& cv, const std::vector<double>& pt) {
        return pow_abs(multilinear_value(cv, pt, n), p);
      },
      ex);
  return std::pow(s, 1.0 / p);
}

double extension_grad_lp_norm(const LatticeFunction& u, double p, const QuadratureRule& rule,
                              Exec ex) {
  if (!(p >= 1.0)) throw Error("InvalidParameter", "extension_grad_lp_norm: requires p >= 1");
  const int n = u.dim();
  const double s = integrate_over_support(
      u, rule,
      [&](const CellValues& cv, const std::vector<double>& pt) {
        return std::pow(multilinear_grad_sq(cv, pt, n), 0.5 * p);
      },
      ex);
  return std::pow(s, 1.0 / p);
}

EquivalenceSummary equivalence_ratios(std::span<const LatticeFunction> sample, double p,
                                      const QuadratureRule& rule, Exec ex) {
  if (sample.empty()) throw Error("InvalidParameter", "equivalence_ratios: empty sample");
  EquivalenceSummary s;
  bool first = true;
  for (const auto& u : sample) {
    if (u.empty()) throw Error("ZeroFunction", "equivalence_ratios: sample contains a zero function");
    const double nr = extension_lp_norm(u, p, rule, ex) / lp_norm(u, p, 0.0, ex);
    const double er = extension_grad_lp_norm(u, p, rule, ex) / d1p_norm(u, p, 0.0, ex);
    if (first) {
      s.norm_ratio_min = s.norm_ratio_max = nr;
      s.energy_ratio_min = s.energy_ratio_max = er;
      first = false;
    } else {
      s.norm_ratio_min = std::min(s.norm_ratio_min, nr);
      s.norm_ratio_max = std::max(s.norm_ratio_max, nr);
      s.energy_ratio_min = std::min(s.energy_ratio_min, er);
      s.energy_ratio_max = std::max(s.energy_ratio_max, er);
    }
  }
  return s;
}

}  // namespace ckn
