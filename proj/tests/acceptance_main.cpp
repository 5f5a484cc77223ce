// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance_tests <path-to-cli> <path-to-golden-repro-json>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "lawcalc/collapse.hpp"
#include "lawcalc/json_io.hpp"
#include "lawcalc/optimizer.hpp"
#include "lawcalc/rearrange.hpp"
#include "lawcalc/repro.hpp"
#include "lawcalc/riskmeasures.hpp"
#include "support/generators.hpp"

using namespace lawcalc;

namespace {

struct Failure {
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
  }
  void close(double a, double b, double tol, const std::string& what) {
    if (!(std::abs(a - b) <= tol)) {
      std::ostringstream os;
      os << what << ": " << a << " vs " << b;
      throw Failure{os.str()};
    }
  }
};

// ---------------------------------------------------------------- 1

void criterion_oracle_equivalence(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  testgen::Rng rng(1001);
  for (int i = 0; i < 500; ++i) {
    const int n = rng.uniform_int(2, 7);
    const UniformSample x = testgen::random_sample(rng, n);
    const UniformSample y = testgen::random_sample(rng, n);
    const auto [lo, hi] = oracle_extrema(x, y);
    c.close(hl_lower(x.law(), y.law()), lo, 1e-9, "lower vs oracle");
    c.close(hl_upper(x.law(), y.law()), hi, 1e-9, "upper vs oracle");
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  c.require(secs < 30.0, "runtime limit 30 s exceeded");
}

// ---------------------------------------------------------------- 2

void criterion_strict_bounds(Check& c) {
  testgen::Rng rng(1002);
  for (int i = 0; i < 1000; ++i) {
    const DiscreteLaw x = testgen::random_nonconstant_law(rng, 7);
    const DiscreteLaw y = testgen::random_nonconstant_law(rng, 7);
    const auto [lo_gap, hi_gap] = strict_gap(x, y);
    c.require(lo_gap > 1e-12, "lower gap not strictly positive");
    c.require(hi_gap > 1e-12, "upper gap not strictly positive");
  }
  for (int i = 0; i < 200; ++i) {
    const DiscreteLaw x = DiscreteLaw::point_mass(rng.quarter(-4, 4));
    const DiscreteLaw y = testgen::random_law(rng, 7);
    const auto [a_lo, a_hi] = strict_gap(x, y);
    const auto [b_lo, b_hi] = strict_gap(y, x);
    c.require(std::abs(a_lo) <= 1e-12 && std::abs(a_hi) <= 1e-12,
              "constant first argument must collapse the bounds");
    c.require(std::abs(b_lo) <= 1e-12 && std::abs(b_hi) <= 1e-12,
              "constant second argument must collapse the bounds");
  }
}

// ---------------------------------------------------------------- 3

void criterion_golden_values(Check& c) {
  const DiscreteLaw z({Atom{-1.0, 2.0 / 3.0}, Atom{2.0, 1.0 / 3.0}});
  const DiscreteLaw x({Atom{-6.0, 0.5}, Atom{4.0, 0.5}});
  const DiscreteLaw y = DiscreteLaw::point_mass(-1.0);
  const DiscreteLaw u({Atom{0.0, 0.5}, Atom{4.0, 0.5}});

  c.close(mean(z), 0.0, 1e-12, "E[Z]");
  c.close(rho_example(z), 0.5, 1e-12, "rho(Z)");
  c.close(phi_example(x), 0.0, 1e-12, "phi(X)");
  c.close(phi_example(y), -1.0, 1e-12, "phi(Y)");
  c.close(mean(x), -1.0, 1e-12, "E[X]");
  c.close(mean(y), -1.0, 1e-12, "E[Y]");
  for (double t : {0.0, 1.0, 2.0, 5.0}) {
    c.close(phi_example(affine(u, t, 0.0)), t, 1e-12, "phi(tU)");
    c.close(phi_example(affine(u, -t, 0.0)), -t, 1e-12, "phi(-tU)");
  }
  for (const ReproSection& s : run_repro("all")) {
    c.require(s.pass, "repro section " + s.id + " failed");
  }
}

// ---------------------------------------------------------------- 4

// Exhaustive midpoint-convexity scan of the Choquet functional over all
// pairs from the integer grid {-2..2}^n, via a precomputed table on the
// half-integer grid (digit sums never carry in base 9).
bool midpoint_convex_on_grid(const Capacity& mu) {
  const int n = mu.atom_count();
  std::size_t full = 1, half = 1;
  for (int i = 0; i < n; ++i) {
    full *= 5;
    half *= 9;
  }
  std::vector<double> half_val(half);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < half; ++idx) {
    std::size_t rest = idx;
    for (int i = 0; i < n; ++i) {
      values[static_cast<std::size_t>(i)] =
          0.5 * static_cast<double>(rest % 9) - 2.0;
      rest /= 9;
    }
    half_val[idx] = choquet(mu, UniformSample(values)).value;
  }
  std::vector<std::size_t> h1(full);
  for (std::size_t idx = 0; idx < full; ++idx) {
    std::size_t rest = idx, code = 1, acc = 0;
    for (int i = 0; i < n; ++i) {
      acc += (rest % 5) * code;
      rest /= 5;
      code *= 9;
    }
    h1[idx] = acc;
  }
  for (std::size_t a = 0; a < full; ++a) {
    const double va = half_val[2 * h1[a]];
    for (std::size_t b = a; b < full; ++b) {
      const double vb = half_val[2 * h1[b]];
      if (half_val[h1[a] + h1[b]] > 0.5 * (va + vb) + 1e-12) return false;
    }
  }
  return true;
}

void criterion_choquet_suite(Check& c) {
  testgen::Rng rng(1004);
  for (int i = 0; i < 200; ++i) {
    const int n = rng.uniform_int(2, 6);
    const Capacity mu = testgen::random_capacity(rng, n);
    const Capacity bar = mu.dual();
    const UniformSample x = testgen::random_sample(rng, n, -2, 2);

    std::vector<double> neg(x.values);
    for (double& v : neg) v = -v;
    c.close(choquet(mu, x).value, -choquet(bar, UniformSample(neg)).value,
            1e-12, "duality");

    const double t = rng.pick<double>({0.0, 0.5, 1.0, 2.0});
    const double off = rng.quarter(-2, 2);
    std::vector<double> scaled(x.values);
    for (double& v : scaled) v = t * v + off;
    c.close(choquet(mu, UniformSample(scaled)).value,
            t * choquet(mu, x).value + off, 1e-12,
            "positive homogeneity + cash additivity");

    // comonotone pair via a shared ordering
    std::vector<double> xs(x.values), ys(x.values.size());
    for (double& v : ys) v = rng.quarter(-2, 2);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t k = order.size(); k > 1; --k) {
      std::swap(order[k - 1],
                order[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<int>(k) - 1))]);
    }
    std::vector<double> cx(xs.size()), cy(xs.size()), sum(xs.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      cx[order[k]] = xs[k];
      cy[order[k]] = ys[k];
      sum[order[k]] = xs[k] + ys[k];
    }
    c.close(choquet(mu, UniformSample(sum)).value,
            choquet(mu, UniformSample(cx)).value +
                choquet(mu, UniformSample(cy)).value,
            1e-12, "comonotone additivity");
  }

  // two-sided: submodularity iff empirical midpoint convexity
  int scanned = 0, submodular_count = 0, nonsubmodular_count = 0;
  testgen::Rng battery(1044);
  for (int n = 2; n <= 6; ++n) {
    const int per_n = n <= 4 ? 6 : (n == 5 ? 4 : 3);
    for (int k = 0; k < per_n; ++k) {
      const Capacity mu = testgen::random_capacity(battery, n);
      const bool sub = is_submodular(mu).submodular;
      const bool convex = midpoint_convex_on_grid(mu);
      if (sub != convex) {
        std::ostringstream os;
        os << "submodularity/convexity mismatch at n=" << n;
        throw Failure{os.str()};
      }
      (sub ? submodular_count : nonsubmodular_count) += 1;
      ++scanned;
    }
  }
  c.require(scanned >= 20, "capacity battery too small");
  c.require(submodular_count >= 3 && nonsubmodular_count >= 3,
            "battery must exercise both sides of the equivalence");
}

// ---------------------------------------------------------------- 5

void criterion_jp_polarisation(Check& c) {
  testgen::Rng rng(1005);
  int trips = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = rng.uniform_int(2, 5);
    const Capacity nu = (i % 2 == 0)
                            ? testgen::random_permutation_closed_family(rng, n)
                            : [&] {
                                std::vector<std::vector<double>> fam;
                                const int cnt = rng.uniform_int(1, 3);
                                for (int d = 0; d < cnt; ++d) {
                                  fam.push_back(testgen::random_density(rng, n));
                                }
                                return Capacity::density_family(fam);
                              }();
    for (double alpha : {0.0, 0.1, 0.3, 0.8, 1.0}) {
      const Capacity mu = Capacity::jp(nu, alpha);
      const Capacity rec = jp_recover_nu(mu, alpha);
      for (std::uint32_t mask = 0; mask <= mu.full_mask(); ++mask) {
        c.close(rec.eval(mask), nu.eval(mask), 1e-12, "polarisation round trip");
      }
      ++trips;
    }
  }
  c.require(trips >= 250, "not enough round trips");

  bool rejected = false;
  try {
    jp_recover_nu(Capacity::uniform_probability(2), 0.5);
  } catch (const std::domain_error&) {
    rejected = true;
  }
  c.require(rejected, "alpha = 1/2 must be rejected");
}

// ---------------------------------------------------------------- 6

void criterion_crm_suite(Check& c) {
  testgen::Rng rng(1006);
  for (int i = 0; i < 200; ++i) {
    std::vector<DiscreteLaw> gens;
    const int count = rng.uniform_int(1, 3);
    for (int g = 0; g < count; ++g) gens.push_back(testgen::random_law(rng, 5));
    const ConsistentRiskMeasure m(std::move(gens));

    const DiscreteLaw law = testgen::random_law(rng, 6);
    const double shift = rng.quarter(-3, 3);
    c.close(crm_eval(m, affine(law, 1.0, shift)), crm_eval(m, law) + shift,
            1e-9, "cash additivity");

    const UniformSample base = testgen::random_sample(rng, rng.uniform_int(2, 6));
    const DiscreteLaw up = affine(base.law(), 1.0, 0.25 * rng.uniform_int(0, 8));
    const DiscreteLaw coarse =
        dilate(base, testgen::random_partition(rng, base.n())).law();
    c.require(ssd_dominated(up, base.law()), "shift must dominate");
    c.require(ssd_dominated(base.law(), coarse), "dilation must be dominated");
    c.require(crm_eval(m, up) >= crm_eval(m, base.law()) - 1e-9,
              "monotonicity under domination (shift)");
    c.require(crm_eval(m, base.law()) >= crm_eval(m, coarse) - 1e-9,
              "monotonicity under domination (dilation)");
  }

  testgen::Rng centered_rng(1066);
  for (int i = 0; i < 100; ++i) {
    const DiscreteLaw u = testgen::random_centered_nonconstant_law(centered_rng, 6);
    for (int g = 1; g <= 99; ++g) {
      c.require(es(u, g / 100.0) > 0.0, "centered tail average must be positive");
    }
  }

  testgen::Rng bound_rng(1067);
  for (int i = 0; i < 200; ++i) {
    const DiscreteLaw law = testgen::random_law(bound_rng, 7);
    const double maxabs =
        std::max(std::abs(law.min_value()), std::abs(law.max_value()));
    for (double q : {0.01, 0.05, 0.1}) {
      const double cap = 2.0 * q / (1.0 - q) * maxabs;
      for (int g = 0; g <= 10; ++g) {
        const double p = q * g / 10.0;
        c.require(std::abs(es(law, p) - mean(law)) <= cap + 1e-12,
                  "tail deviation bound");
      }
    }
  }
}

// ---------------------------------------------------------------- 7

void criterion_collapse_detectors(Check& c) {
  testgen::Rng rng(1007);
  const Functional mean_phi = mean_functional();
  for (int i = 0; i < 100; ++i) {
    const DiscreteLaw z = testgen::random_law(rng, 6);
    const double x0 = rng.quarter(-3, 3);
    const CollapseVerdict v = translation_line_test(
        mean_phi, x0, z, mean(z), {-2.0, -1.0, 1.0, 2.0});
    c.require(v.collapsed, "mean must pass the line test");
  }

  const Functional es_half = es_functional(0.5);
  const Functional worst =
      crm_functional(ConsistentRiskMeasure({DiscreteLaw::point_mass(0.0)}));
  for (int i = 0; i < 60; ++i) {
    const DiscreteLaw z = testgen::random_centered_nonconstant_law(rng, 6);
    for (const Functional* phi : {&es_half, &worst}) {
      const double slope = (*phi)(z);  // the positive-ray slope
      const CollapseVerdict v = translation_line_test(
          *phi, 0.0, z, slope, {-2.0, -1.0, 1.0, 2.0});
      c.require(!v.collapsed && v.gap > 1e-3,
                "full-line test must fail for " + phi->name);
    }
  }

  int batteries = 0;
  testgen::Rng jp_rng(1077);
  for (int i = 0; i < 24; ++i) {
    const int n = jp_rng.uniform_int(2, 6);
    static const std::vector<double> alphas{0.0, 0.1, 0.3, 0.8, 1.0};
    const double alpha = jp_rng.pick(alphas);
    const bool uniform_case = (i % 3 == 0);
    const Capacity nu =
        uniform_case
            ? Capacity::density_family({std::vector<double>(
                  static_cast<std::size_t>(n), 1.0)})
            : testgen::random_permutation_closed_family(jp_rng, n);
    bool nu_uniform = true;
    for (std::uint32_t mask = 0; mask <= (std::uint32_t{1} << n) - 1; ++mask) {
      if (std::abs(nu.eval(mask) -
                   static_cast<double>(std::popcount(mask)) / n) > 1e-12) {
        nu_uniform = false;
        break;
      }
    }
    const CollapseVerdict v =
        choquet_symmetric_linearity(Capacity::jp(nu, alpha));
    c.require(v.collapsed == nu_uniform,
              "witness must exist exactly for the uniform probability");
    c.require(v.notes.find("inconsistency:") == std::string::npos,
              "recovery must be uniform on witness cases");
    ++batteries;
  }
  c.require(batteries >= 20, "JP battery too small");
}

// ---------------------------------------------------------------- 8

void criterion_optimizer(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  testgen::Rng rng(1008);

  auto positive_density = [&rng](int n) {
    std::vector<double> values(static_cast<std::size_t>(n));
    for (double& v : values) v = 0.25 * rng.uniform_int(1, 12);
    UniformSample d(values);
    if (d.is_constant()) d.values.front() += 0.25;
    return d;
  };
  auto price = [](const UniformSample& d, const UniformSample& x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < d.n(); ++i) sum += d.values[i] * x.values[i];
    return sum / static_cast<double>(d.n());
  };

  for (int i = 0; i < 300; ++i) {
    const int n = rng.uniform_int(2, 6);
    const UniformSample d = positive_density(n);
    const DiscreteLaw gen = testgen::random_sample(rng, n).law();
    FeasibleQuadruple q{mean_functional(),
                        DomainSpec::rearrangement_closure({gen}, false, true),
                        d, 0.0};
    switch (rng.uniform_int(0, 2)) {
      case 0:
        break;
      case 1:
        q.phi = es_functional(rng.uniform_int(0, 9) / 10.0);
        break;
      default:
        q.phi = crm_functional(
            ConsistentRiskMeasure({testgen::random_law(rng, 4)}));
        break;
    }
    UniformSample x = expand_to_sample(gen, static_cast<std::size_t>(n));
    for (std::size_t k = x.n(); k > 1; --k) {
      std::swap(x.values[k - 1],
                x.values[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<int>(k) - 1))]);
    }
    const double m0 = 0.25 * rng.uniform_int(0, 8);
    for (double& v : x.values) v += m0;
    q.p = price(d, x);

    const double before = q.phi(x.law());
    const UniformSample out = antimonotone_improve(q, x);
    c.require(q.phi(out.law()) >= before - 1e-9,
              "improvement must not lower the objective");
    c.require(std::abs(price(d, out) - q.p) <= 1e-9,
              "improvement must restore the budget exactly");
    c.require(is_antimonotone_pair(out, d), "output must be antimonotone");
  }

  // exhaustive confirmation that conforming instances admit an
  // antimonotone optimum
  for (int i = 0; i < 80; ++i) {
    const int n = rng.uniform_int(2, 6);
    const UniformSample d = positive_density(n);
    const DiscreteLaw gen = testgen::random_sample(rng, n).law();
    FeasibleQuadruple q{es_functional(rng.uniform_int(0, 9) / 10.0),
                        DomainSpec::rearrangement_closure({gen}, false, true),
                        d, 0.0};
    UniformSample seed = expand_to_sample(gen, static_cast<std::size_t>(n));
    const double m0 = 0.25 * rng.uniform_int(0, 4);
    for (double& v : seed.values) v += m0;
    q.p = price(d, seed);

    std::vector<double> perm(
        expand_to_sample(gen, static_cast<std::size_t>(n)).values);
    std::sort(perm.begin(), perm.end());
    double best = -std::numeric_limits<double>::infinity();
    bool antimonotone_at_best = false;
    do {
      UniformSample cand{std::vector<double>(perm)};
      const double m = (q.p - price(d, cand)) / d.mean();
      if (m < -1e-9) continue;
      for (double& v : cand.values) v += m;
      const double value = q.phi(cand.law());
      if (value > best + 1e-9) {
        best = value;
        antimonotone_at_best = is_antimonotone_pair(cand, d);
      } else if (value >= best - 1e-9 && !antimonotone_at_best) {
        antimonotone_at_best = is_antimonotone_pair(cand, d);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    c.require(antimonotone_at_best,
              "an antimonotone optimum must exist in conforming instances");
  }

  // counterexample scenarios across >= 10 distinct densities each
  std::vector<std::vector<double>> densities = {
      {2.0, 1.0, 1.0},        {3.0, 1.0, 2.0},       {1.0, 0.5, 2.0},
      {2.5, 0.5, 1.0},        {1.0, 2.0, 3.0, 4.0},  {0.5, 1.5, 1.0, 2.0},
      {2.0, 2.0, 1.0},        {1.25, 0.25, 0.5},     {3.0, 2.0, 2.0, 1.0},
      {0.75, 1.5, 2.25},      {1.0, 4.0},            {2.0, 1.0, 0.5, 0.5, 1.5}};
  for (Scenario s : {Scenario::HalfSpaceMean, Scenario::RearrangementShifts,
                     Scenario::IntervalTail, Scenario::PreferenceTop}) {
    int confirmed = 0;
    for (const auto& values : densities) {
      const UniformSample d{std::vector<double>(values)};
      const CounterexampleCase cc = counterexample_scenario(s, d);
      const CounterexampleCheck check = check_counterexample(cc);
      c.require(check.ok, "scenario outcome not confirmed for a density");
      ++confirmed;
    }
    c.require(confirmed >= 10, "density battery too small");
  }

  // mixed-sign densities where the interval scenario excludes antimonotone
  // optima outright (the budget cannot be met below the top value)
  for (const auto& values : {std::vector<double>{4.0, 1.0, -1.0},
                             std::vector<double>{4.0, 4.0, 1.0, -1.0}}) {
    const UniformSample d{std::vector<double>(values)};
    const CounterexampleCase cc =
        counterexample_scenario(Scenario::IntervalTail, d);
    const CounterexampleCheck check = check_counterexample(cc);
    c.require(check.ok && check.no_antimonotone_optimum,
              "mixed-sign interval scenario must exclude antimonotone optima");
  }

  for (Scenario s : {Scenario::HalfSpaceMean, Scenario::RearrangementShifts,
                     Scenario::IntervalTail, Scenario::PreferenceTop}) {
    bool refused = false;
    try {
      counterexample_scenario(s, UniformSample({1.5, 1.5, 1.5}));
    } catch (const std::domain_error&) {
      refused = true;
    }
    c.require(refused, "constant pricing densities must be refused");
  }

  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  c.require(secs < 120.0, "runtime limit 2 min exceeded");
}

// ---------------------------------------------------------------- 9

void criterion_repro_golden(Check& c, const std::string& cli,
                            const std::string& golden_path) {
  std::ifstream golden_in(golden_path, std::ios::binary);
  c.require(static_cast<bool>(golden_in), "cannot open golden file");
  std::ostringstream golden;
  golden << golden_in.rdbuf();

  const std::string command = cli + " --json repro all";
  FILE* pipe = popen(command.c_str(), "r");
  c.require(pipe != nullptr, "cannot run the CLI");
  std::string output;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    output.append(buffer, got);
  }
  const int status = pclose(pipe);
  c.require(status == 0, "repro all must exit 0");
  c.require(output == golden.str(), "repro all output differs from golden");
}

struct Criterion {
  int id;
  std::string label;
  void (*fn)(Check&);
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance_tests <cli> <golden-json>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string golden = argv[2];

  const std::vector<Criterion> criteria = {
      {1, "rearrangement bounds match the permutation oracle",
       criterion_oracle_equivalence},
      {2, "strict bounds around the mean product", criterion_strict_bounds},
      {3, "golden worked-example values", criterion_golden_values},
      {4, "Choquet property suite", criterion_choquet_suite},
      {5, "JP polarisation round trip", criterion_jp_polarisation},
      {6, "consistent risk measure suite", criterion_crm_suite},
      {7, "collapse detectors", criterion_collapse_detectors},
      {8, "optimiser suite", criterion_optimizer},
  };

  int failures = 0;
  for (const Criterion& crit : criteria) {
    try {
      Check c;
      crit.fn(c);
      std::printf("PASS criterion %d: %s\n", crit.id, crit.label.c_str());
    } catch (const Failure& f) {
      std::printf("FAIL criterion %d: %s (%s)\n", crit.id, crit.label.c_str(),
                  f.detail.c_str());
      ++failures;
    } catch (const std::exception& e) {
      std::printf("FAIL criterion %d: %s (exception: %s)\n", crit.id,
                  crit.label.c_str(), e.what());
      ++failures;
    }
    std::fflush(stdout);
  }

  try {
    Check c;
    criterion_repro_golden(c, cli, golden);
    std::printf("PASS criterion 9: repro all matches the golden report\n");
  } catch (const Failure& f) {
    std::printf("FAIL criterion 9: repro all matches the golden report (%s)\n",
                f.detail.c_str());
    ++failures;
  } catch (const std::exception& e) {
    std::printf("FAIL criterion 9: repro all matches the golden report "
                "(exception: %s)\n",
                e.what());
    ++failures;
  }

  return failures == 0 ? 0 : 1;
}
