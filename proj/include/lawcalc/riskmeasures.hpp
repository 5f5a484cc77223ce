#ifndef LAWCALC_RISKMEASURES_HPP
#define LAWCALC_RISKMEASURES_HPP

#include <vector>

#include "lawcalc/laws.hpp"

namespace lawcalc {

/// Expected Shortfall at level p in [0,1]: the tail average
/// (1/(1-p)) \int_p^1 q_X(s) ds for p < 1, and the maximum support point
/// (the attained essential supremum) at p = 1.
double es(const DiscreteLaw& x, double p);

/// Exact sup over p in [0,1] of ES_p(x) - ES_p(y). On each interval between
/// merged breakpoints the map is (a p + b)/(1 - p) with a derivative of
/// constant sign, so the supremum is attained on the merged breakpoint set
/// together with p = 0 and the p = 1 limit max(x) - max(y).
double adjusted_es_sup(const DiscreteLaw& x, const DiscreteLaw& y);

/// A cash-additive functional monotone for the increasing convex order,
/// represented by a finite family of acceptance generators:
///   phi(X) = min over generators Y of sup_p { ES_p(X) - ES_p(Y) }.
/// The finite generator family is the desk-scale truncation of the full
/// acceptance set, which is infinite in general.
class ConsistentRiskMeasure {
 public:
  explicit ConsistentRiskMeasure(std::vector<DiscreteLaw> generators);
  const std::vector<DiscreteLaw>& generators() const { return generators_; }

 private:
  std::vector<DiscreteLaw> generators_;
};

double crm_eval(const ConsistentRiskMeasure& phi, const DiscreteLaw& x);

/// rho(X) = E[X]/2 + \int_{1/2}^1 q_X(s) ds.
double rho_example(const DiscreteLaw& x);

/// phi(X) = rho(X) when rho(X) < 0, else max{E[X], 0} / 2.
double phi_example(const DiscreteLaw& x);

/// The law-invariant, convex, closed hull of all rearrangements of the
/// generators, together with conic ray directions and an optional closure
/// under adding nonnegative constants.
struct LawInvariantSet {
  std::vector<DiscreteLaw> generators;  // nonempty
  std::vector<DiscreteLaw> rays;
  bool increasing = false;
};

/// Support functional sigma_C(y) = sup_{X in C} \int_0^1 q_X q_y:
/// +infinity when some ray pairs positively with y (hl_upper(ray, y) > tol)
/// or when the set is increasing and mean(y) > tol; otherwise the max of
/// hl_upper(g, y) over the generators.
double support_functional(const LawInvariantSet& c, const DiscreteLaw& y,
                          double tol = kTolerance);

struct RecessionVerdict {
  bool collapsed = false;
  double lower = 0.0;  // -sigma_C(-1); may be -infinity
  double upper = 0.0;  // sigma_C(1); may be +infinity
};

/// Detects the mean-slab collapse: collapsed iff some ray is nonconstant
/// with |mean| <= tol, in which case membership in the set is equivalent to
/// the mean lying in [lower, upper].
RecessionVerdict recession_collapse_check(const LawInvariantSet& c,
                                          double tol = kTolerance);

/// Outer membership test against the documented probe family: sorted 0/1
/// and +/-1 patterns at resolution `resolution` plus the constants +/-1,
/// each probe y checked as \int q_x q_y <= sigma_C(y) + tol.
bool set_contains(const LawInvariantSet& c, const DiscreteLaw& x,
                  double tol = kTolerance, int resolution = 8);

}  // namespace lawcalc

#endif
