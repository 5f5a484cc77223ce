#include "lawcalc/functional.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace lawcalc {

Functional mean_functional() {
  Functional f;
  f.name = "mean";
  f.law_invariant = true;
  f.weakly_increasing = true;
  f.increasing = true;
  f.eval = [](const DiscreteLaw& x) { return mean(x); };
  return f;
}

Functional es_functional(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("es_functional: level must lie in [0,1]");
  }
  Functional f;
  f.name = "es(p=" + std::to_string(p) + ")";
  f.law_invariant = true;
  f.weakly_increasing = true;
  f.increasing = true;
  f.eval = [p](const DiscreteLaw& x) { return es(x, p); };
  return f;
}

Functional crm_functional(ConsistentRiskMeasure m) {
  Functional f;
  f.name = "crm";
  f.law_invariant = true;
  f.weakly_increasing = true;
  f.increasing = true;  // cash additive
  auto shared = std::make_shared<ConsistentRiskMeasure>(std::move(m));
  f.eval = [shared](const DiscreteLaw& x) { return crm_eval(*shared, x); };
  return f;
}

Functional rho_example_functional() {
  Functional f;
  f.name = "rho-example";
  f.law_invariant = true;
  f.weakly_increasing = true;
  f.increasing = true;  // rho(X+m) = rho(X) + m
  f.eval = [](const DiscreteLaw& x) { return rho_example(x); };
  return f;
}

Functional phi_example_functional() {
  Functional f;
  f.name = "phi-example";
  f.law_invariant = true;
  f.weakly_increasing = true;
  f.increasing = false;  // flat at 0 on the rho >= 0, E <= 0 region
  f.eval = [](const DiscreteLaw& x) { return phi_example(x); };
  return f;
}

Functional choquet_functional(Capacity mu) {
  if (!is_law_invariant(mu)) {
    throw std::domain_error(
        "choquet_functional: capacity must be law invariant");
  }
  Functional f;
  f.name = "choquet";
  f.law_invariant = true;
  f.weakly_increasing = true;  // monotone and cash additive
  f.increasing = true;
  auto shared = std::make_shared<Capacity>(std::move(mu));
  f.eval = [shared](const DiscreteLaw& x) {
    const auto n = static_cast<std::size_t>(shared->atom_count());
    return choquet(*shared, expand_to_sample(x, n)).value;
  };
  return f;
}

Functional negated_functional(Functional f) {
  Functional g;
  g.name = "neg-" + f.name;
  g.law_invariant = f.law_invariant;
  g.weakly_increasing = false;
  g.increasing = false;
  auto inner = std::make_shared<Functional>(std::move(f));
  g.eval = [inner](const DiscreteLaw& x) { return -inner->eval(x); };
  return g;
}

Functional neg_abs_mean_functional() {
  Functional f;
  f.name = "neg-abs-mean";
  f.law_invariant = true;
  f.weakly_increasing = false;
  f.increasing = false;
  f.eval = [](const DiscreteLaw& x) { return -std::abs(mean(x)); };
  return f;
}

}  // namespace lawcalc
