#pragma once

#include <utility>
#include <vector>

#include "ckn/exec.hpp"
#include "ckn/function.hpp"

namespace ckn {

/// Logarithmic cutoff eta(x) = clamp((log R - log|x|)/(log R - log r), 0, 1)
/// with |x| the Euclidean norm: 1 inside radius r, 0 outside R.
struct CutoffSpec {
  int n = 2;
  double r = 10;
  double R = 100;
  double a = 0;
  double b = 0;

  void validate() const;
  double eta(double euclid_sq) const;  // from the squared Euclidean norm
};

/// Materializes eta on a box (radius >= R + 2 required).
LatticeFunction make_cutoff(const CutoffSpec& spec, const Box& box);

/// Weighted gradient norm of eta, streamed over the lattice without
/// materializing a function:
///  - a-b < 1: the l^{N/(b-a+1)}_{a-b} norm of the gradient, i.e.
///    (sum_x sum_{y~x} mu_{(a-b)P}(x) |eta(y)-eta(x)|^P)^{1/P} with
///    P = N/(b-a+1);
///  - a-b = 1: sup_x mu_1(x) sum_{y~x} |eta(y)-eta(x)|.
double cutoff_gradient_norm(const CutoffSpec& spec, Exec ex = default_exec());

struct DecayFit {
  double fitted_slope = 0;     // slope of log(norm) against log(log(R/r))
  double predicted_slope = 0;  // (b-a+1)/N - 1, or -1 on the a-b = 1 branch
  std::vector<std::pair<double, double>> samples;  // (R, norm)
};

/// Fits the decay of the cutoff gradient norm over an increasing family of R.
/// Requires at least 4 samples with max(R)/min(R) >= 100.
DecayFit decay_exponent_fit(const CutoffSpec& base, const std::vector<double>& radii,
                            Exec ex = default_exec());

}  // namespace ckn
