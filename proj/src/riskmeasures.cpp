#include "lawcalc/riskmeasures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lawcalc/rearrange.hpp"

namespace lawcalc {

double es(const DiscreteLaw& x, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("es: level must lie in [0,1]");
  }
  if (p == 1.0) return x.max_value();
  return tail_integral(x.quantile_fn(), p) / (1.0 - p);
}

double adjusted_es_sup(const DiscreteLaw& x, const DiscreteLaw& y) {
  const QuantileFn qx = x.quantile_fn();
  const QuantileFn qy = y.quantile_fn();
  std::vector<double> candidates = qx.breakpoints();
  candidates.insert(candidates.end(), qy.breakpoints().begin(),
                    qy.breakpoints().end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  double best = -std::numeric_limits<double>::infinity();
  for (double p : candidates) best = std::max(best, es(x, p) - es(y, p));
  return best;
}

ConsistentRiskMeasure::ConsistentRiskMeasure(
    std::vector<DiscreteLaw> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) {
    throw std::domain_error(
        "ConsistentRiskMeasure: at least one acceptance generator required");
  }
}

double crm_eval(const ConsistentRiskMeasure& phi, const DiscreteLaw& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const DiscreteLaw& g : phi.generators()) {
    best = std::min(best, adjusted_es_sup(x, g));
  }
  return best;
}

double rho_example(const DiscreteLaw& x) {
  return 0.5 * mean(x) + tail_integral(x.quantile_fn(), 0.5);
}

double phi_example(const DiscreteLaw& x) {
  const double r = rho_example(x);
  if (r < 0.0) return r;
  return 0.5 * std::max(mean(x), 0.0);
}

double support_functional(const LawInvariantSet& c, const DiscreteLaw& y,
                          double tol) {
  if (c.generators.empty()) {
    throw std::domain_error("support_functional: generators must be nonempty");
  }
  if (c.increasing && mean(y) > tol) {
    return std::numeric_limits<double>::infinity();
  }
  for (const DiscreteLaw& r : c.rays) {
    if (hl_upper(r, y) > tol) {
      return std::numeric_limits<double>::infinity();
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const DiscreteLaw& g : c.generators) {
    best = std::max(best, hl_upper(g, y));
  }
  return best;
}

RecessionVerdict recession_collapse_check(const LawInvariantSet& c,
                                          double tol) {
  RecessionVerdict v;
  for (const DiscreteLaw& r : c.rays) {
    if (!r.is_constant() && std::abs(mean(r)) <= tol) {
      v.collapsed = true;
      break;
    }
  }
  v.upper = support_functional(c, DiscreteLaw::point_mass(1.0), tol);
  v.lower = -support_functional(c, DiscreteLaw::point_mass(-1.0), tol);
  return v;
}

bool set_contains(const LawInvariantSet& c, const DiscreteLaw& x,
                  double tol, int resolution) {
  if (resolution < 1) {
    throw std::domain_error("set_contains: resolution >= 1 required");
  }
  // Probe family: constants +/-1, sorted 0/1 patterns (k of n ones), and
  // sorted -1/+1 patterns, at the given resolution.
  std::vector<DiscreteLaw> probes;
  probes.push_back(DiscreteLaw::point_mass(1.0));
  probes.push_back(DiscreteLaw::point_mass(-1.0));
  const double n = static_cast<double>(resolution);
  for (int k = 1; k < resolution; ++k) {
    const double pk = static_cast<double>(k) / n;
    probes.push_back(DiscreteLaw({Atom{0.0, 1.0 - pk}, Atom{1.0, pk}}));
    probes.push_back(DiscreteLaw({Atom{-1.0, 1.0 - pk}, Atom{1.0, pk}}));
  }
  for (const DiscreteLaw& y : probes) {
    const double sigma = support_functional(c, y, tol);
    if (std::isinf(sigma)) continue;
    if (hl_upper(x, y) > sigma + tol) return false;
  }
  return true;
}

}  // namespace lawcalc
