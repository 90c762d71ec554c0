#include "ckn/cutoff.hpp"

#include <algorithm>
#include <cmath>

#include "ckn/error.hpp"

namespace ckn {

void CutoffSpec::validate() const {
  if (n < 1) throw Error("InvalidParameter", "CutoffSpec: N must be >= 1");
  if (!(r >= 10.0)) throw Error("InvalidParameter", "CutoffSpec: requires r >= 10");
  if (!(R > r)) throw Error("InvalidParameter", "CutoffSpec: requires R > r");
  const double d = a - b;
  if (!(d >= 0.0 && d <= 1.0)) throw Error("InvalidParameter", "CutoffSpec: requires 0 <= a-b <= 1");
}

double CutoffSpec::eta(double euclid_sq) const {
  if (euclid_sq <= r * r) return 1.0;
  if (euclid_sq >= R * R) return 0.0;
  const double v = (std::log(R) - 0.5 * std::log(euclid_sq)) / (std::log(R) - std::log(r));
  return std::clamp(v, 0.0, 1.0);
}

LatticeFunction make_cutoff(const CutoffSpec& spec, const Box& box) {
  spec.validate();
  if (box.n != spec.n) throw Error("DimensionMismatch", "make_cutoff: box dimension mismatch");
  if (static_cast<double>(box.radius) < spec.R + 2.0) {
    throw Error("InvalidParameter", "make_cutoff: box radius must be >= R + 2");
  }
  LatticeFunction out(spec.n);
  for (std::int64_t i = 0; i < box.volume(); ++i) {
    const LatticePoint x = box.point_of(i);
    double sq = 0.0;
    for (int c : x.coords) sq += static_cast<double>(c) * c;
    const double v = spec.eta(sq);
    if (v != 0.0) out.set(x, v);
  }
  return out;
}

namespace {

/// Per-point contribution machinery shared by both norm branches. Streams the
/// cube [-M, M]^n; points with every neighbor on one side of the transition
/// annulus contribute nothing and are skipped cheaply.
struct CutoffGrid {
  const CutoffSpec& spec;
  int M;
  std::int64_t side;
  std::int64_t volume;

  explicit CutoffGrid(const CutoffSpec& s)
      : spec(s),
        M(static_cast<int>(std::ceil(s.R)) + 2),
        side(2 * static_cast<std::int64_t>(M) + 1) {
    volume = 1;
    for (int k = 0; k < s.n; ++k) volume *= side;
  }

  // Decodes index -> coords; returns squared Euclidean norm and l1 distance.
  void decode(std::int64_t idx, int* coords, double& euclid_sq, std::int64_t& d1) const {
    euclid_sq = 0.0;
    d1 = 0;
    for (int k = 0; k < spec.n; ++k) {
      const int c = static_cast<int>(idx % side) - M;
      idx /= side;
      coords[k] = c;
      euclid_sq += static_cast<double>(c) * c;
      d1 += std::abs(static_cast<std::int64_t>(c));
    }
  }

  bool skippable(double euclid_sq) const {
    // |x| <= r-1 means eta = 1 at x and all neighbors; |x| >= R+1 means 0.
    const double lo = spec.r - 1.0;
    return euclid_sq <= lo * lo || euclid_sq >= (spec.R + 1.0) * (spec.R + 1.0);
  }
};

}  // namespace

double cutoff_gradient_norm(const CutoffSpec& spec, Exec ex) {
  spec.validate();
  const CutoffGrid grid(spec);
  const double diff = spec.a - spec.b;
  constexpr int kMaxDim = 8;
  if (spec.n > kMaxDim) throw Error("InvalidParameter", "cutoff_gradient_norm: N too large");

  if (diff < 1.0) {
    const double P = static_cast<double>(spec.n) / (spec.b - spec.a + 1.0);
    const double ws = diff * P;  // weight exponent of mu_{(a-b)P}
    const double sum = reduce_sum(
        grid.volume,
        [&](std::int64_t idx) {
          int coords[kMaxDim];
          double sq;
          std::int64_t d1;
          grid.decode(idx, coords, sq, d1);
          if (grid.skippable(sq)) return 0.0;
          const double ex0 = spec.eta(sq);
          detail::Neumaier acc;
          for (int k = 0; k < spec.n; ++k) {
            const double c = coords[k];
            for (double step : {+1.0, -1.0}) {
              const double nsq = sq + 2.0 * c * step + 1.0;
              acc.add(pow_abs(spec.eta(nsq) - ex0, P));
            }
          }
          return weight_at_distance(d1, ws) * acc.value();
        },
        ex);
    return std::pow(sum, 1.0 / P);
  }

  // a - b = 1: the weighted sup norm with the displayed neighbor sum.
  return reduce_max(
      grid.volume,
      [&](std::int64_t idx) {
        int coords[kMaxDim];
        double sq;
        std::int64_t d1;
        grid.decode(idx, coords, sq, d1);
        if (grid.skippable(sq)) return 0.0;
        const double ex0 = spec.eta(sq);
        detail::Neumaier acc;
        for (int k = 0; k < spec.n; ++k) {
          const double c = coords[k];
          for (double step : {+1.0, -1.0}) {
            const double nsq = sq + 2.0 * c * step + 1.0;
            acc.add(std::abs(spec.eta(nsq) - ex0));
          }
        }
        return weight_at_distance(d1, 1.0) * acc.value();
      },
      ex);
}

DecayFit decay_exponent_fit(const CutoffSpec& base, const std::vector<double>& radii, Exec ex) {
  if (radii.size() < 4) {
    throw Error("InsufficientSamples", "decay_exponent_fit: needs at least 4 values of R");
  }
  const double rmin = *std::min_element(radii.begin(), radii.end());
  const double rmax = *std::max_element(radii.begin(), radii.end());
  if (!(rmax / rmin >= 100.0)) {
    throw Error("InsufficientSamples", "decay_exponent_fit: R values must span >= 2 decades");
  }
  DecayFit fit;
  const double diff = base.a - base.b;
  fit.predicted_slope =
      (diff == 1.0) ? -1.0 : (base.b - base.a + 1.0) / static_cast<double>(base.n) - 1.0;

  std::vector<double> xs, ys;
  for (double R : radii) {
    CutoffSpec spec = base;
    spec.R = R;
    const double norm = cutoff_gradient_norm(spec, ex);
    fit.samples.emplace_back(R, norm);
    xs.push_back(std::log(std::log(R / base.r)));
    ys.push_back(std::log(norm));
  }
  // Least-squares slope.
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.fitted_slope = sxy / sxx;
  return fit;
}

}  // namespace ckn
