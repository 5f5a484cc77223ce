#include "lawcalc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lawcalc/rearrange.hpp"

namespace lawcalc {

namespace {

double price(const UniformSample& d, const UniformSample& x) {
  if (d.n() != x.n()) {
    throw std::domain_error("price: samples live on different spaces");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < d.n(); ++i) sum += d.values[i] * x.values[i];
  return sum / static_cast<double>(d.n());
}

UniformSample shifted(const UniformSample& x, double m) {
  std::vector<double> values(x.values);
  for (double& v : values) v += m;
  return UniformSample(std::move(values));
}

void validate_quadruple(const FeasibleQuadruple& q) {
  if (!q.phi.law_invariant) {
    throw std::domain_error("optimizer: objective must be law invariant");
  }
  if (!(q.d.mean() > 0.0)) {
    throw std::domain_error("optimizer: pricing density needs E[D] > 0");
  }
}

// The monotonicity flags are caller-supplied; verify cheaply on probes.
void spot_check_weakly_increasing(const Functional& phi,
                                  const std::vector<DiscreteLaw>& probes) {
  if (!phi.weakly_increasing) {
    throw std::domain_error(
        "optimizer: objective must be flagged weakly increasing");
  }
  for (const DiscreteLaw& g : probes) {
    const double base = phi(g);
    if (!std::isfinite(base)) continue;
    if (phi(affine(g, 1.0, 1.0)) < base - kTolerance) {
      throw std::domain_error(
          "optimizer: objective failed the weak-increase spot check");
    }
  }
}

}  // namespace

DomainSpec DomainSpec::rearrangement_closure(
    std::vector<DiscreteLaw> generators, bool allow_shift, bool increasing) {
  if (generators.empty()) {
    throw std::domain_error("DomainSpec: at least one generator required");
  }
  DomainSpec s;
  s.kind = Kind::RearrangementClosure;
  s.generators = std::move(generators);
  s.allow_shift = allow_shift;
  s.increasing_flag = increasing;
  return s;
}

DomainSpec DomainSpec::interval(double a, double b) {
  if (!(a < b)) throw std::domain_error("DomainSpec: interval needs a < b");
  DomainSpec s;
  s.kind = Kind::Interval;
  s.a = a;
  s.b = b;
  return s;
}

DomainSpec DomainSpec::mean_half_space(double bound) {
  DomainSpec s;
  s.kind = Kind::MeanHalfSpace;
  s.bound = bound;
  return s;
}

DomainSpec DomainSpec::preference_bounded(DiscreteLaw top) {
  DomainSpec s;
  s.kind = Kind::PreferenceBounded;
  s.top = std::move(top);
  return s;
}

bool DomainSpec::increasing() const {
  switch (kind) {
    case Kind::RearrangementClosure:
      return increasing_flag || allow_shift;
    case Kind::Interval:
    case Kind::MeanHalfSpace:
    case Kind::PreferenceBounded:
      return false;
  }
  return false;
}

bool DomainSpec::contains(const UniformSample& x, double tol) const {
  switch (kind) {
    case Kind::RearrangementClosure: {
      std::vector<double> sorted(x.values);
      std::sort(sorted.begin(), sorted.end());
      for (const DiscreteLaw& g : generators) {
        UniformSample gs({0.0});
        try {
          gs = expand_to_sample(g, x.n(), tol);
        } catch (const std::domain_error&) {
          continue;  // generator not representable on this space
        }
        const double m = sorted.front() - gs.values.front();
        bool match = true;
        for (std::size_t i = 0; i < x.n(); ++i) {
          if (std::abs(sorted[i] - gs.values[i] - m) > tol) {
            match = false;
            break;
          }
        }
        if (!match) continue;
        if (allow_shift) return true;
        if (increasing_flag ? m >= -tol : std::abs(m) <= tol) return true;
      }
      return false;
    }
    case Kind::Interval:
      for (double v : x.values) {
        if (v < a - tol || v > b + tol) return false;
      }
      return true;
    case Kind::MeanHalfSpace:
      return x.mean() <= bound + tol;
    case Kind::PreferenceBounded:
      return ssd_dominated(*top, x.law(), tol);
  }
  return false;
}

UniformSample antimonotone_improve(const FeasibleQuadruple& q,
                                   const UniformSample& x,
                                   double budget_tol) {
  validate_quadruple(q);
  if (!q.domain.increasing()) {
    throw std::domain_error(
        "antimonotone_improve requires an increasing domain");
  }
  spot_check_weakly_increasing(q.phi, {x.law()});
  if (!q.domain.contains(x)) {
    throw std::domain_error("antimonotone_improve: x is not in the domain");
  }
  const double budget = price(q.d, x);
  if (std::abs(budget - q.p) > budget_tol) {
    throw std::domain_error("antimonotone_improve: x violates the budget");
  }
  const CouplingResult cr = couple(x.law(), q.d, CoupleKind::Antimonotone);
  const double m = (budget - cr.inner_product) / q.d.mean();
  return shifted(cr.x_rearranged, m);
}

SolveReport solve(const FeasibleQuadruple& q, double budget_tol) {
  validate_quadruple(q);
  if (q.domain.kind != DomainSpec::Kind::RearrangementClosure ||
      !q.domain.increasing()) {
    throw std::domain_error(
        "solve requires an increasing rearrangement-closed domain");
  }
  spot_check_weakly_increasing(q.phi, q.domain.generators);

  SolveReport report{UniformSample({0.0}), 0.0, false, {}};
  bool have_best = false;
  for (const DiscreteLaw& g : q.domain.generators) {
    UniformSample gs({0.0});
    try {
      gs = expand_to_sample(g, q.d.n());
    } catch (const std::domain_error&) {
      continue;
    }
    const CouplingResult cr = couple(g, q.d, CoupleKind::Antimonotone);
    const double m = (q.p - cr.inner_product) / q.d.mean();
    if (!q.domain.allow_shift && m < -budget_tol) {
      continue;  // only upward shifts are available
    }
    const UniformSample candidate = shifted(cr.x_rearranged, m);
    const double value = q.phi(candidate.law());
    report.improvement_trace.emplace_back(candidate, value);
    if (!have_best || value > report.value) {
      report.solution = candidate;
      report.value = value;
      have_best = true;
    }
  }
  if (!have_best) {
    throw std::domain_error("solve: no generator admits a budget-feasible shift");
  }
  report.antimonotone_with_d = is_antimonotone_pair(report.solution, q.d);
  return report;
}

CounterexampleCase counterexample_scenario(Scenario s,
                                           const UniformSample& d) {
  if (d.is_constant()) {
    throw std::domain_error("collapse: pricing rule is the expectation");
  }
  if (!(d.mean() > 0.0)) {
    throw std::domain_error("counterexample: pricing density needs E[D] > 0");
  }
  const std::size_t n = d.n();

  // Z = D - E[D] is nonconstant, centered, comonotone with D.
  std::vector<double> centered(d.values);
  const double dm = d.mean();
  for (double& v : centered) v -= dm;
  const UniformSample z(centered);

  CounterexampleCase c{
      FeasibleQuadruple{mean_functional(), DomainSpec::mean_half_space(0.0), d,
                        0.0},
      z,
      ExpectedOutcome{},
      ""};

  switch (s) {
    case Scenario::HalfSpaceMean: {
      c.quadruple.p = price(d, z);  // = Var(D)/1 > 0
      c.optimal = z;
      c.expected = {true, true, true};
      c.description =
          "mean objective on {E[X] <= 0}: the domain is not increasing and "
          "every candidate antimonotone with D misses the positive budget";
      return c;
    }
    case Scenario::RearrangementShifts: {
      c.quadruple.phi = neg_abs_mean_functional();
      c.quadruple.domain = DomainSpec::rearrangement_closure(
          {z.law()}, /*allow_shift=*/true, /*increasing=*/true);
      c.quadruple.p = price(d, z);
      c.optimal = z;
      c.expected = {true, true, true};
      c.description =
          "-|E[X]| on shifted rearrangements: the objective is not weakly "
          "increasing and only comonotone arrangements are optimal";
      return c;
    }
    case Scenario::IntervalTail: {
      // Threshold between distinct values of d with E[D 1_{D<=k}] != 0.
      std::vector<double> distinct(d.values);
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()),
                     distinct.end());
      double k = 0.0;
      bool found = false;
      for (std::size_t j = 0; j + 1 < distinct.size() && !found; ++j) {
        const double cand = 0.5 * (distinct[j] + distinct[j + 1]);
        double partial = 0.0;
        for (double v : d.values) {
          if (v <= cand) partial += v;
        }
        if (std::abs(partial) > 1e-9) {
          k = cand;
          found = true;
        }
      }
      if (!found) {
        throw std::domain_error(
            "counterexample: no valid threshold (pricing density vanishes "
            "below its maximum)");
      }
      std::size_t below = 0;
      for (double v : d.values) {
        if (v <= k) ++below;
      }
      const double p0 = static_cast<double>(below) / static_cast<double>(n);
      const double lo = 0.0, hi = 1.0;
      std::vector<double> zvals(n);
      for (std::size_t i = 0; i < n; ++i) {
        zvals[i] = d.values[i] <= k ? lo : hi;
      }
      const UniformSample zc(zvals);
      c.quadruple.phi = es_functional(p0);
      c.quadruple.domain = DomainSpec::interval(lo, hi);
      c.quadruple.p = price(d, zc);
      c.optimal = zc;
      // Only the existence of a non-antimonotone optimum is claimed here:
      // when the interval leaves budget slack below the top value (e.g.
      // positive densities), antimonotone optima can exist as well.
      c.expected = {false, true, false};
      c.description =
          "tail-average objective on an interval domain: the top-valued "
          "indicator of {D > k} is optimal and comonotone with D";
      return c;
    }
    case Scenario::PreferenceTop: {
      const DiscreteLaw top = d.law();
      const UniformSample zt = couple(top, d, CoupleKind::Comonotone).x_rearranged;
      c.quadruple.phi = mean_functional();
      c.quadruple.domain = DomainSpec::preference_bounded(top);
      c.quadruple.p = price(d, zt);
      c.optimal = zt;
      c.expected = {true, true, true};
      c.description =
          "mean objective below a preference top: the comonotone copy of the "
          "top is optimal, and no constant meets both budget and bound";
      return c;
    }
  }
  throw std::logic_error("counterexample_scenario: unreachable");
}

CounterexampleCheck check_counterexample(const CounterexampleCase& c,
                                         double budget_tol) {
  const UniformSample& d = c.quadruple.d;
  const std::size_t n = d.n();
  if (n > 7) {
    throw std::domain_error("check_counterexample: refused for n > 7");
  }
  const double dmean = d.mean();
  const DomainSpec& dom = c.quadruple.domain;
  const Functional& phi = c.quadruple.phi;
  const double p = c.quadruple.p;

  std::vector<UniformSample> candidates;
  auto add_with_budget_shift = [&](const UniformSample& base) {
    const double m = (p - price(d, base)) / dmean;
    candidates.push_back(shifted(base, m));
  };

  std::vector<double> perm(c.optimal.values);
  std::sort(perm.begin(), perm.end());
  do {
    add_with_budget_shift(UniformSample(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));

  candidates.push_back(
      UniformSample(std::vector<double>(n, p / dmean)));  // constant

  if (dom.kind == DomainSpec::Kind::Interval) {
    // Every {a,b}-valued vector, with its budget-matching shift.
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = (mask & (std::uint32_t{1} << i)) ? dom.b : dom.a;
      }
      add_with_budget_shift(UniformSample(std::move(v)));
    }
  }

  CounterexampleCheck out;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<UniformSample> feasible;
  for (const UniformSample& x : candidates) {
    if (std::abs(price(d, x) - p) > budget_tol) continue;
    if (!dom.contains(x)) continue;
    feasible.push_back(x);
    best = std::max(best, phi(x.law()));
  }
  out.feasible_count = feasible.size();
  out.optimal_value = best;

  const double claimed = phi(c.optimal.law());
  out.optimum_confirmed = dom.contains(c.optimal) &&
                          std::abs(price(d, c.optimal) - p) <= budget_tol &&
                          claimed >= best - 1e-9;

  out.no_antimonotone_optimum = true;
  out.non_antimonotone_optimum_exists = false;
  out.no_constant_feasible = true;
  for (const UniformSample& x : feasible) {
    const bool optimal = phi(x.law()) >= best - 1e-9;
    if (optimal && is_antimonotone_pair(x, d)) {
      out.no_antimonotone_optimum = false;
    }
    if (optimal && !is_antimonotone_pair(x, d)) {
      out.non_antimonotone_optimum_exists = true;
    }
    if (x.is_constant()) out.no_constant_feasible = false;
  }

  out.ok = out.optimum_confirmed;
  if (c.expected.no_antimonotone_optimum && !out.no_antimonotone_optimum) {
    out.ok = false;
  }
  if (c.expected.non_antimonotone_optimum_exists &&
      !out.non_antimonotone_optimum_exists) {
    out.ok = false;
  }
  if (c.expected.no_constant_feasible && !out.no_constant_feasible) {
    out.ok = false;
  }
  return out;
}

}  // namespace lawcalc
