#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ckn {

/// Execution policy for the data-parallel kernels. The serial path runs the
/// exact same blocked algorithm without threads, so both policies produce
/// bit-identical results; `serial` is kept as the reference for tests and
/// benchmarks.
enum class Exec { serial, parallel };

Exec default_exec() noexcept;
void set_default_exec(Exec e) noexcept;
int max_threads() noexcept;

namespace detail {

/// Neumaier compensated accumulator.
struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) noexcept {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const noexcept { return sum + comp; }
};

constexpr std::int64_t kBlock = 2048;

}  // namespace detail

/// Deterministic blocked compensated sum of term(0..n-1). Partial sums are
/// computed per fixed-size block and combined in block order, so the result
/// does not depend on the thread count or schedule.
template <class Term>
double reduce_sum(std::int64_t n, Term&& term, Exec ex = default_exec()) {
  using detail::kBlock;
  if (n <= 0) return 0.0;
  const std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  auto block_sum = [&](std::int64_t b) {
    detail::Neumaier acc;
    const std::int64_t end = std::min(n, (b + 1) * kBlock);
    for (std::int64_t i = b * kBlock; i < end; ++i) acc.add(term(i));
    return acc.value();
  };
  if (nblocks == 1) return block_sum(0);
  std::vector<double> part(static_cast<std::size_t>(nblocks));
#ifdef _OPENMP
  if (ex == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nblocks; ++b) part[static_cast<std::size_t>(b)] = block_sum(b);
  } else
#else
  (void)ex;
#endif
  {
    for (std::int64_t b = 0; b < nblocks; ++b) part[static_cast<std::size_t>(b)] = block_sum(b);
  }
  detail::Neumaier acc;
  for (double v : part) acc.add(v);
  return acc.value();
}

/// Deterministic max-reduction (max is order independent).
template <class Term>
double reduce_max(std::int64_t n, Term&& term, Exec ex = default_exec()) {
  using detail::kBlock;
  double result = -std::numeric_limits<double>::infinity();
  if (n <= 0) return result;
  const std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  auto block_max = [&](std::int64_t b) {
    double m = -std::numeric_limits<double>::infinity();
    const std::int64_t end = std::min(n, (b + 1) * kBlock);
    for (std::int64_t i = b * kBlock; i < end; ++i) m = std::max(m, term(i));
    return m;
  };
#ifdef _OPENMP
  if (ex == Exec::parallel && nblocks > 1) {
    std::vector<double> part(static_cast<std::size_t>(nblocks));
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nblocks; ++b) part[static_cast<std::size_t>(b)] = block_max(b);
    for (double v : part) result = std::max(result, v);
    return result;
  }
#else
  (void)ex;
#endif
  for (std::int64_t b = 0; b < nblocks; ++b) result = std::max(result, block_max(b));
  return result;
}

/// Parallel loop over [0, n). The body must write to disjoint locations.
template <class Body>
void for_each_index(std::int64_t n, Body&& body, Exec ex = default_exec()) {
#ifdef _OPENMP
  if (ex == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)ex;
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

/// |d|^p with fast paths for the common exponents.
inline double pow_abs(double d, double p) noexcept {
  const double a = std::abs(d);
  if (p == 2.0) return a * a;
  if (p == 1.0) return a;
  if (p == 3.0) return a * a * a;
  return std::pow(a, p);
}

/// sign(d)·|d|^{p-1}, the p-Laplacian edge nonlinearity; defined as 0 at d = 0.
inline double phi_p(double d, double p) noexcept {
  if (d == 0.0) return 0.0;
  if (p == 2.0) return d;
  if (p == 3.0) return std::abs(d) * d;
  const double m = std::pow(std::abs(d), p - 1.0);
  return d > 0.0 ? m : -m;
}

}  // namespace ckn
