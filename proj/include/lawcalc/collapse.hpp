#ifndef LAWCALC_COLLAPSE_HPP
#define LAWCALC_COLLAPSE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lawcalc/capacities.hpp"
#include "lawcalc/functional.hpp"
#include "lawcalc/laws.hpp"

namespace lawcalc {

/// Outcome of a collapse detector. `gap` is the measured violation (or
/// slack) and is always nonnegative; a collapsed verdict means the gap was
/// within tolerance. `witness` carries the law that certifies or refutes
/// the tested property; `notes` names the probe family used.
struct CollapseVerdict {
  bool collapsed = false;
  std::optional<DiscreteLaw> witness;
  double gap = 0.0;
  std::string notes;
};

/// Checks phi(x0 + t Z) = phi(x0) + a t over the grid; the gap is the
/// largest absolute deviation. phi must be law invariant and finite at x0.
CollapseVerdict translation_line_test(const Functional& phi, double x0,
                                      const DiscreteLaw& z, double a,
                                      const std::vector<double>& t_grid,
                                      double tol = kCollapseTolerance);

/// Runs the certified inequality chain
///   hl_upper(z,y) - hl_lower(z,y) <= 2 (phi(x0) - x0 E[y]) / k
/// for k = 1..k_max. If the chain holds to k_max, the rearrangement gap of
/// (z, y) is forced below tolerance, which for nonconstant z demands a
/// constant y; a nonconstant y surviving the chain is flagged as a witness.
/// phi is assumed linear along z at x0 (check with translation_line_test)
/// with its conjugate normalised to zero at y.
CollapseVerdict meta_gap_certificate(const Functional& phi, double x0,
                                     const DiscreteLaw& z,
                                     const DiscreteLaw& y, int k_max,
                                     double tol = kCollapseTolerance);

/// Samples pairs of equal-mean laws (dilation coarsenings of random
/// samples, plus any explicit pairs) and measures the largest phi
/// difference. A collapsed verdict means phi looked expectation invariant
/// on every probe.
CollapseVerdict expectation_invariance_probe(
    const Functional& phi, int trials, std::uint64_t seed = 42,
    const std::vector<std::pair<DiscreteLaw, DiscreteLaw>>& extra_pairs = {},
    double tol = kCollapseTolerance);

/// Searches for a nonconstant Z with E_mu[-Z] = -E_mu[Z] among all
/// nonconstant 0/1 indicator patterns plus the supplied candidates
/// (supplying a constant candidate is a domain error). When a witness is
/// found, the base capacity is recovered by JP polarisation and verified
/// to be the uniform probability; a witness with a non-uniform recovery is
/// flagged in the notes and must never occur. mu must be a law-invariant
/// JP capacity.
CollapseVerdict choquet_symmetric_linearity(
    const Capacity& mu, const std::vector<UniformSample>& candidates = {},
    double tol = kCollapseTolerance);

}  // namespace lawcalc

#endif
