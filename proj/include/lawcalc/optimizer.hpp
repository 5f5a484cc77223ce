#ifndef LAWCALC_OPTIMIZER_HPP
#define LAWCALC_OPTIMIZER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lawcalc/functional.hpp"
#include "lawcalc/laws.hpp"

namespace lawcalc {

/// A law-invariant optimisation domain with a membership predicate on
/// samples. Membership depends on a sample only through its law.
struct DomainSpec {
  enum class Kind {
    RearrangementClosure,  // rearrangements of generators, plus shifts
    Interval,              // a <= X <= b
    MeanHalfSpace,         // E[X] <= bound
    PreferenceBounded      // X dominated by `top` in increasing convex order
  };

  Kind kind = Kind::Interval;
  std::vector<DiscreteLaw> generators;
  bool allow_shift = false;      // closed under adding any constant
  bool increasing_flag = false;  // closed under adding nonnegative constants
  double a = 0.0, b = 0.0;
  double bound = 0.0;
  std::optional<DiscreteLaw> top;

  static DomainSpec rearrangement_closure(std::vector<DiscreteLaw> generators,
                                          bool allow_shift, bool increasing);
  static DomainSpec interval(double a, double b);
  static DomainSpec mean_half_space(double bound);
  static DomainSpec preference_bounded(DiscreteLaw top);

  /// Closed under adding nonnegative constants.
  bool increasing() const;
  bool contains(const UniformSample& x, double tol = kTolerance) const;
};

/// Objective, law-invariant domain, pricing density and budget level for
/// the constrained maximisation of phi over {X in C : E[DX] = p}.
struct FeasibleQuadruple {
  Functional phi;   // must be flagged law invariant
  DomainSpec domain;
  UniformSample d;  // pricing density, mean(d) > 0
  double p = 0.0;
};

struct SolveReport {
  UniformSample solution;
  double value = 0.0;
  bool antimonotone_with_d = false;
  std::vector<std::pair<UniformSample, double>> improvement_trace;
};

/// One improvement step: rearranges x antimonotone with d and shifts by
/// m = (E[Dx] - E[Dx']) / E[D] >= 0 to restore the budget exactly. Requires
/// an increasing domain, a weakly increasing objective, a member x, and the
/// budget satisfied at x. Never decreases phi.
UniformSample antimonotone_improve(const FeasibleQuadruple& q,
                                   const UniformSample& x,
                                   double budget_tol = 1e-9);

/// Solves over a rearrangement-closed increasing domain: for each generator
/// the antimonotone coupling with d plus the unique budget-matching shift,
/// best candidate by phi value (ties broken by generator index).
SolveReport solve(const FeasibleQuadruple& q, double budget_tol = 1e-9);

enum class Scenario {
  HalfSpaceMean,        // mean objective on {E[X] <= 0}: domain not increasing
  RearrangementShifts,  // -|E[X]| on shifted rearrangements: phi not monotone
  IntervalTail,         // tail-average objective on [a,b]
  PreferenceTop         // mean objective under a preference bound
};

/// Which structural claims the scenario's checker must confirm.
struct ExpectedOutcome {
  bool no_antimonotone_optimum = false;
  bool non_antimonotone_optimum_exists = false;
  bool no_constant_feasible = false;
};

struct CounterexampleCase {
  FeasibleQuadruple quadruple;
  UniformSample optimal;  // the claimed optimal solution
  ExpectedOutcome expected;
  std::string description;
};

/// Builds one of the four sharpness scenarios around the pricing density d.
/// Constant d is refused: the pricing rule would be the expectation.
CounterexampleCase counterexample_scenario(Scenario s, const UniformSample& d);

struct CounterexampleCheck {
  bool ok = false;                 // every expected claim confirmed
  bool optimum_confirmed = false;  // claimed solution feasible and maximal
  bool no_antimonotone_optimum = false;
  bool non_antimonotone_optimum_exists = false;
  bool no_constant_feasible = false;
  double optimal_value = 0.0;
  std::size_t feasible_count = 0;
};

/// Verifies the expected outcome by exhaustive search over all
/// rearrangements of the claimed optimum with their unique budget-matching
/// shifts, constant candidates, and (for interval domains) the {a,b}-valued
/// grid. Refused for n > 7.
CounterexampleCheck check_counterexample(const CounterexampleCase& c,
                                         double budget_tol = 1e-9);

}  // namespace lawcalc

#endif
