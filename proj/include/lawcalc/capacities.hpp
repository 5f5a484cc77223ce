#ifndef LAWCALC_CAPACITIES_HPP
#define LAWCALC_CAPACITIES_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "lawcalc/laws.hpp"

namespace lawcalc {

/// Monotone normalised set function on the n-atom equiprobable space.
/// Subsets are bitmasks: bit i set means atom i belongs to the set.
///
/// Four parameterisations:
///   Distortion     mu(A) = T(|A|/n) for a piecewise-linear nondecreasing
///                  T with T(0)=0, T(1)=1;
///   DensityFamily  mu(A) = max over densities d of (1/n) sum_{i in A} d_i,
///                  each d nonnegative with average 1 (a coherent capacity
///                  given by a finite family of scenario densities);
///   JP             mu(A) = alpha nu(A) + (1-alpha) dual(nu)(A) for a
///                  DensityFamily nu and alpha in [0,1], alpha != 1/2;
///   Explicit       tabulated values, possibly partial; n <= 16.
class Capacity {
 public:
  enum class Kind { Distortion, DensityFamily, JP, Explicit };

  static Capacity distortion(int n,
                             std::vector<std::pair<double, double>> knots);
  static Capacity density_family(std::vector<std::vector<double>> densities);
  static Capacity jp(Capacity nu, double alpha);
  /// Complete table indexed by bitmask (size 2^n).
  static Capacity explicit_values(int n, std::vector<double> values);
  /// Partial table; evaluation of an absent subset is a domain error.
  static Capacity explicit_partial(
      int n, const std::vector<std::pair<std::uint32_t, double>>& entries);
  /// The uniform probability measure (identity distortion).
  static Capacity uniform_probability(int n);

  Kind kind() const { return kind_; }
  int atom_count() const { return n_; }
  std::uint32_t full_mask() const {
    return n_ >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n_) - 1;
  }

  double eval(std::uint32_t subset) const;

  /// Dual capacity: eval(dual(), A) = 1 - eval(A complement). Closed form
  /// for Distortion (reflected knots) and JP (alpha -> 1-alpha); tabulated
  /// for DensityFamily (n <= 16) and Explicit.
  Capacity dual() const;

  double alpha() const;
  const Capacity& nu() const;
  const std::vector<std::pair<double, double>>& knots() const;
  const std::vector<std::vector<double>>& densities() const;

 private:
  Capacity() = default;

  Kind kind_ = Kind::Explicit;
  int n_ = 0;
  std::vector<std::pair<double, double>> knots_;
  std::vector<std::vector<double>> densities_;
  std::shared_ptr<const Capacity> nu_;
  double alpha_ = 0.0;
  std::vector<double> values_;  // 2^n entries, NaN marks absent
};

/// Choquet integral value with the layered recomputation trail:
/// (threshold v_j, mu({X >= v_j})) for each layer above the bottom value.
struct ChoquetValue {
  double value = 0.0;
  std::vector<std::pair<double, double>> layer_trace;
};

/// Exact Choquet integral by the sorted-layer sum
///   v_1 + sum_{j>=2} (v_j - v_{j-1}) mu({X >= v_j})
/// over the distinct values v_1 < ... < v_m of x.
ChoquetValue choquet(const Capacity& mu, const UniformSample& x);

struct SubmodularityResult {
  bool submodular = true;
  /// A violating pair: mu(A u B) + mu(A n B) > mu(A) + mu(B).
  std::optional<std::pair<std::uint32_t, std::uint32_t>> violation;
};

/// Exhaustive submodularity check via the exchange condition
///   mu(A u {i}) + mu(A u {j}) >= mu(A u {i,j}) + mu(A)
/// over all A and i != j outside A, which is equivalent to the pairwise
/// definition; a violation is reported as the pair (A u {i}, A u {j}).
/// Refused for n > 16.
SubmodularityResult is_submodular(const Capacity& mu, double tol = kTolerance);

/// True iff eval depends on the subset only through its cardinality
/// (exhaustive; refused for n > 16).
bool is_law_invariant(const Capacity& mu, double tol = kTolerance);

/// Exhaustive monotonicity-under-inclusion check (n <= 16).
bool is_monotone(const Capacity& mu, double tol = kTolerance);

/// Inverts the JP mixture: nu(A) = alpha/(2 alpha - 1) mu(A)
///                                - (1-alpha)/(2 alpha - 1) dual(mu)(A),
/// returned as an Explicit capacity. alpha = 1/2 is a domain error.
Capacity jp_recover_nu(const Capacity& mu, double alpha);

/// Neo-additive capacity
///   mu(A) = (1-delta) Q(A) + (1-alpha) delta 1{A != empty}
///         + alpha delta 1{A = full},
/// for a probability vector q and delta, alpha in [0,1].
Capacity neo_additive(const std::vector<double>& q, double delta,
                      double alpha);

/// All 2^n values of mu by bitmask (n <= 16).
std::vector<double> explicit_table(const Capacity& mu);

}  // namespace lawcalc

#endif
