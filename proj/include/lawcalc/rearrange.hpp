#ifndef LAWCALC_REARRANGE_HPP
#define LAWCALC_REARRANGE_HPP

#include <utility>

#include "lawcalc/laws.hpp"

namespace lawcalc {

enum class CoupleKind { Comonotone, Antimonotone };

/// A rearrangement of one marginal against a fixed sample, together with
/// the attained value of E[X'Y].
struct CouplingResult {
  UniformSample x_rearranged;
  double inner_product = 0.0;
  CoupleKind kind = CoupleKind::Comonotone;
};

/// Sharp upper bound max_{X'~X} E[X'Y] = \int_0^1 q_X(s) q_Y(s) ds,
/// computed exactly on the merged breakpoint grid.
double hl_upper(const DiscreteLaw& x, const DiscreteLaw& y);

/// Sharp lower bound min_{X'~X} E[X'Y] = \int_0^1 q_X(1-s) q_Y(s) ds.
double hl_lower(const DiscreteLaw& x, const DiscreteLaw& y);

/// Rearranges x's values on y's n-point space so that the pair attains
/// hl_upper (Comonotone) or hl_lower (Antimonotone). Ties in y are broken
/// by atom index, so the output is deterministic. Requires every atom
/// probability of x to be a multiple of 1/n.
CouplingResult couple(const DiscreteLaw& x, const UniformSample& y,
                      CoupleKind kind);

/// (E[X]E[Y] - hl_lower, hl_upper - E[X]E[Y]); both strictly positive iff
/// both laws are nonconstant.
std::pair<double, double> strict_gap(const DiscreteLaw& x,
                                     const DiscreteLaw& y);

/// Exhaustive (min, max) of (1/n) sum x_{pi(i)} y_i over all permutations.
/// Refused for n > 8.
std::pair<double, double> oracle_extrema(const UniformSample& x,
                                         const UniformSample& y);

/// True iff (x_i - x_j)(y_i - y_j) >= 0 for all i, j: the empirical joint
/// attains the upper bound.
bool is_comonotone_pair(const UniformSample& x, const UniformSample& y);

/// True iff (x_i - x_j)(y_i - y_j) <= 0 for all i, j.
bool is_antimonotone_pair(const UniformSample& x, const UniformSample& y);

}  // namespace lawcalc

#endif
