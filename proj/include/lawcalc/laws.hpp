#ifndef LAWCALC_LAWS_HPP
#define LAWCALC_LAWS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "lawcalc/common.hpp"

namespace lawcalc {

/// One support point of a finitely supported law.
struct Atom {
  double value = 0.0;
  double prob = 0.0;
};

class QuantileFn;

/// A finitely supported probability law on the reals.
///
/// Atoms are kept sorted with strictly increasing values; equal values are
/// merged at construction, probabilities renormalised to sum to one within
/// 1e-12. Atoms with probability below kMinAtomProb are rejected.
/// Immutable after construction.
class DiscreteLaw {
 public:
  explicit DiscreteLaw(std::vector<Atom> atoms);

  static DiscreteLaw point_mass(double value);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double min_value() const { return atoms_.front().value; }
  double max_value() const { return atoms_.back().value; }
  bool is_constant() const { return atoms_.size() == 1; }

  /// Left-continuous quantile function of this law.
  QuantileFn quantile_fn() const;

 private:
  std::vector<Atom> atoms_;
};

/// Left-continuous step function on (0,1]: breakpoints 0 = s0 < s1 < ... <
/// s_k = 1 and nondecreasing levels v1 <= ... <= v_k, with q(s) = v_i on
/// (s_{i-1}, s_i].
class QuantileFn {
 public:
  QuantileFn(std::vector<double> breakpoints, std::vector<double> levels);

  double operator()(double s) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& levels() const { return levels_; }

  /// Inverse of DiscreteLaw::quantile_fn (adjacent equal levels merge).
  DiscreteLaw to_law() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
};

/// An explicit random variable on the n-point equiprobable space: atom i
/// carries probability 1/n. The arrangement of values matters (couplings);
/// the law does not depend on it.
struct UniformSample {
  std::vector<double> values;

  explicit UniformSample(std::vector<double> v);

  std::size_t n() const { return values.size(); }
  double mean() const;
  bool is_constant() const;
  DiscreteLaw law() const;
};

/// Left-continuous quantile q_X(s) = inf{x : P(X<=x) >= s}, s in (0,1).
double quantile(const DiscreteLaw& law, double s);

double mean(const DiscreteLaw& law);

/// Exact integral of q over [a, b] by breakpoint summation, 0 <= a <= b <= 1.
double partial_integral(const QuantileFn& q, double a, double b);

/// Tail integral \int_p^1 q(s) ds.
double tail_integral(const QuantileFn& q, double p);

/// True iff E[f(X)] >= E[f(Y)] for every convex f: equal means and tail
/// integrals of q_x dominating those of q_y at every merged breakpoint.
bool convex_order_dominates(const DiscreteLaw& x, const DiscreteLaw& y,
                            double tol = kTolerance);

/// True iff E[f(X)] >= E[f(Y)] for every nondecreasing convex f: tail
/// integrals of q_x dominate those of q_y (no mean-equality requirement).
bool ssd_dominated(const DiscreteLaw& x, const DiscreteLaw& y,
                   double tol = kTolerance);

/// Conditional expectation of x given the partition: each block of indices
/// (0-based, disjoint, covering 0..n-1) is replaced by its block average.
UniformSample dilate(const UniformSample& x,
                     const std::vector<std::vector<std::size_t>>& partition);

/// Empirical law from a text file with one real per line (LF or CRLF).
DiscreteLaw ingest_csv(const std::string& path);

/// Law of scale*X + offset.
DiscreteLaw affine(const DiscreteLaw& law, double scale, double offset);

/// Law of -X.
DiscreteLaw reflect(const DiscreteLaw& law);

/// Sorted n-point sample representing the law; requires every atom
/// probability to be a multiple of 1/n within tolerance.
UniformSample expand_to_sample(const DiscreteLaw& law, std::size_t n,
                               double tol = kTolerance);

}  // namespace lawcalc

#endif
