#include "lawcalc/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lawcalc {

namespace {

// \int_0^1 f(s) g(s) ds for the step functions f, g given by cell-midpoint
// evaluation on a grid containing every breakpoint of both factors. Both
// factors are constant inside each cell, so the midpoint rule is exact.
double product_integral(const std::vector<double>& grid,
                        const QuantileFn& qx, bool reflect_x,
                        const QuantileFn& qy) {
  double sum = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double lo = grid[i - 1];
    const double hi = grid[i];
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const double fx = reflect_x ? qx(1.0 - mid) : qx(mid);
    sum += fx * qy(mid) * (hi - lo);
  }
  return sum;
}

std::vector<double> merge_grids(std::vector<double> a,
                                const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

double hl_upper(const DiscreteLaw& x, const DiscreteLaw& y) {
  const QuantileFn qx = x.quantile_fn();
  const QuantileFn qy = y.quantile_fn();
  const auto grid = merge_grids(qx.breakpoints(), qy.breakpoints());
  return product_integral(grid, qx, /*reflect_x=*/false, qy);
}

double hl_lower(const DiscreteLaw& x, const DiscreteLaw& y) {
  const QuantileFn qx = x.quantile_fn();
  const QuantileFn qy = y.quantile_fn();
  // Breakpoints of s -> q_x(1-s) are the reflections 1 - s_i.
  std::vector<double> reflected;
  reflected.reserve(qx.breakpoints().size());
  for (auto it = qx.breakpoints().rbegin(); it != qx.breakpoints().rend(); ++it) {
    reflected.push_back(1.0 - *it);
  }
  const auto grid = merge_grids(std::move(reflected), qy.breakpoints());
  return product_integral(grid, qx, /*reflect_x=*/true, qy);
}

CouplingResult couple(const DiscreteLaw& x, const UniformSample& y,
                      CoupleKind kind) {
  const std::size_t n = y.n();
  const UniformSample xs = expand_to_sample(x, n);  // sorted ascending

  // Positions of y in nondecreasing order, ties broken by atom index.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return y.values[a] < y.values[b];
                   });

  std::vector<double> arranged(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double v = kind == CoupleKind::Comonotone
                         ? xs.values[r]
                         : xs.values[n - 1 - r];
    arranged[order[r]] = v;
  }

  double inner = 0.0;
  for (std::size_t i = 0; i < n; ++i) inner += arranged[i] * y.values[i];
  inner /= static_cast<double>(n);

  return CouplingResult{UniformSample(std::move(arranged)), inner, kind};
}

std::pair<double, double> strict_gap(const DiscreteLaw& x,
                                     const DiscreteLaw& y) {
  const double product = mean(x) * mean(y);
  return {product - hl_lower(x, y), hl_upper(x, y) - product};
}

std::pair<double, double> oracle_extrema(const UniformSample& x,
                                         const UniformSample& y) {
  const std::size_t n = x.n();
  if (n != y.n()) {
    throw std::domain_error("oracle_extrema: samples live on different spaces");
  }
  if (n > 8) {
    throw std::domain_error("oracle_extrema: refused for n > 8");
  }
  std::vector<double> perm(x.values);
  std::sort(perm.begin(), perm.end());
  double lo = 0.0, hi = 0.0;
  bool first = true;
  do {
    double inner = 0.0;
    for (std::size_t i = 0; i < n; ++i) inner += perm[i] * y.values[i];
    inner /= static_cast<double>(n);
    if (first) {
      lo = hi = inner;
      first = false;
    } else {
      lo = std::min(lo, inner);
      hi = std::max(hi, inner);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {lo, hi};
}

bool is_comonotone_pair(const UniformSample& x, const UniformSample& y) {
  const std::size_t n = x.n();
  if (n != y.n()) {
    throw std::domain_error("is_comonotone_pair: dimension mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((x.values[i] - x.values[j]) * (y.values[i] - y.values[j]) < 0.0) {
        return false;
      }
    }
  }
  return true;
}

bool is_antimonotone_pair(const UniformSample& x, const UniformSample& y) {
  const std::size_t n = x.n();
  if (n != y.n()) {
    throw std::domain_error("is_antimonotone_pair: dimension mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((x.values[i] - x.values[j]) * (y.values[i] - y.values[j]) > 0.0) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace lawcalc
