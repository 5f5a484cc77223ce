#ifndef LAWCALC_FUNCTIONAL_HPP
#define LAWCALC_FUNCTIONAL_HPP

#include <functional>
#include <string>

#include "lawcalc/capacities.hpp"
#include "lawcalc/laws.hpp"
#include "lawcalc/riskmeasures.hpp"

namespace lawcalc {

/// An evaluation contract: law in, real (possibly +infinity) out.
/// The capability flags are caller-supplied and spot-verified by sampling
/// where an operation depends on them; they cannot be proven from the
/// evaluator alone.
struct Functional {
  std::string name;
  bool law_invariant = true;
  bool weakly_increasing = false;  // phi(X+m) >= phi(X) for m >= 0
  bool increasing = false;         // phi(X+m) >  phi(X) for m > 0
  std::function<double(const DiscreteLaw&)> eval;

  double operator()(const DiscreteLaw& x) const { return eval(x); }
};

Functional mean_functional();
Functional es_functional(double p);
Functional crm_functional(ConsistentRiskMeasure m);
Functional rho_example_functional();
Functional phi_example_functional();
/// Requires a law-invariant capacity; laws are expanded onto its atom space.
Functional choquet_functional(Capacity mu);
/// -f, with the monotonicity flags dropped.
Functional negated_functional(Functional f);
/// phi(X) = -|E[X]|.
Functional neg_abs_mean_functional();

}  // namespace lawcalc

#endif
