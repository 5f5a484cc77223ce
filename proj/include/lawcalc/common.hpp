#ifndef LAWCALC_COMMON_HPP
#define LAWCALC_COMMON_HPP

namespace lawcalc {

/// Global comparison tolerance. Predicates that compare reals take an
/// explicit tolerance argument defaulting to this value.
inline constexpr double kTolerance = 1e-9;

/// Atoms with probability below this are rejected at construction.
inline constexpr double kMinAtomProb = 1e-15;

/// Tolerance for "collapsed" verdicts in the collapse detectors; looser
/// than kTolerance to absorb accumulated breakpoint-merging error.
inline constexpr double kCollapseTolerance = 1e-7;

}  // namespace lawcalc

#endif
