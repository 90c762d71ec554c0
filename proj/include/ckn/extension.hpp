#pragma once

#include <span>
#include <vector>

#include "ckn/exec.hpp"
#include "ckn/function.hpp"

namespace ckn {

/// Tensor-product Gauss-Legendre rule on [0,1]; weights are positive and sum
/// to 1 per axis.
struct QuadratureRule {
  int order = 4;
  std::vector<double> nodes;
  std::vector<double> weights;

  static QuadratureRule gauss_legendre(int order);
};

/// Multilinear weights of x in the unit cell: coefficient of the vertex with
/// offset bits omega is prod_k (omega_k x_k + (1-omega_k)(1-x_k)). Vertex i
/// has offset bit k equal to (i >> k) & 1. Nonnegative, summing to 1.
std::vector<double> barycentric_coeffs(std::span<const double> x, int n);

/// Value of the piecewise-multilinear extension of u at a continuum point.
double evaluate_extension(const LatticeFunction& u, std::span<const double> x);

/// L^p norm of the extension, integrated cell by cell with the given rule
/// over every cell touching the support.
double extension_lp_norm(const LatticeFunction& u, double p, const QuadratureRule& rule,
                         Exec ex = default_exec());

/// L^p norm of |grad of the extension| (Euclidean length); the gradient is
/// multilinear in the other coordinates and constant in the differentiated
/// one, evaluated analytically per quadrature node.
double extension_grad_lp_norm(const LatticeFunction& u, double p, const QuadratureRule& rule,
                              Exec ex = default_exec());

/// Extremes of the two norm-equivalence ratios over a sample of nonzero
/// functions: ||ext u||_{L^p}/||u||_{l^p} and ||grad ext u||_{L^p}/||u||_{D^{1,p}}.
struct EquivalenceSummary {
  double norm_ratio_min = 0, norm_ratio_max = 0;
  double energy_ratio_min = 0, energy_ratio_max = 0;
};

EquivalenceSummary equivalence_ratios(std::span<const LatticeFunction> sample, double p,
                                      const QuadratureRule& rule, Exec ex = default_exec());

}  // namespace ckn
