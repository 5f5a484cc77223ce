#include "lawcalc/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lawcalc/rearrange.hpp"

namespace lawcalc {

namespace {

void require_law_invariant(const Functional& phi, const char* what) {
  if (!phi.law_invariant) {
    throw std::domain_error(std::string(what) +
                            ": functional must be flagged law invariant");
  }
}

double finite_at_point(const Functional& phi, double x0, const char* what) {
  const double v = phi(DiscreteLaw::point_mass(x0));
  if (!std::isfinite(v)) {
    throw std::domain_error(std::string(what) +
                            ": x0 must be in the functional's domain");
  }
  return v;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

CollapseVerdict translation_line_test(const Functional& phi, double x0,
                                      const DiscreteLaw& z, double a,
                                      const std::vector<double>& t_grid,
                                      double tol) {
  require_law_invariant(phi, "translation_line_test");
  if (t_grid.empty()) {
    throw std::domain_error("translation_line_test: t_grid must be nonempty");
  }
  const double phi0 = finite_at_point(phi, x0, "translation_line_test");

  CollapseVerdict v;
  double worst_t = t_grid.front();
  for (double t : t_grid) {
    const DiscreteLaw shifted = affine(z, t, x0);
    const double dev = std::abs(phi(shifted) - phi0 - a * t);
    if (dev > v.gap) {
      v.gap = dev;
      worst_t = t;
    }
  }
  v.collapsed = v.gap <= tol;
  if (!v.collapsed) {
    v.witness = affine(z, worst_t, x0);
  }
  std::ostringstream notes;
  notes << "line test for " << phi.name << " at x0=" << x0 << ", slope a=" << a
        << " over " << t_grid.size() << " grid points";
  if (!v.collapsed) notes << "; largest deviation at t=" << format_double(worst_t);
  v.notes = notes.str();
  return v;
}

CollapseVerdict meta_gap_certificate(const Functional& phi, double x0,
                                     const DiscreteLaw& z,
                                     const DiscreteLaw& y, int k_max,
                                     double tol) {
  require_law_invariant(phi, "meta_gap_certificate");
  if (z.is_constant()) {
    throw std::domain_error("meta_gap_certificate: nonconstant Z required");
  }
  if (k_max < 1) {
    throw std::domain_error("meta_gap_certificate: k_max >= 1 required");
  }
  const double phi0 = finite_at_point(phi, x0, "meta_gap_certificate");

  CollapseVerdict v;
  if (y.is_constant()) {
    v.collapsed = true;
    v.gap = 0.0;
    v.notes = "y is constant: the rearrangement gap vanishes identically";
    return v;
  }

  const double gap_zy = hl_upper(z, y) - hl_lower(z, y);
  const double offset = phi0 - x0 * mean(y);
  double violation = -std::numeric_limits<double>::infinity();
  int first_failure = 0;
  for (int k = 1; k <= k_max; ++k) {
    const double excess = gap_zy - 2.0 * offset / static_cast<double>(k);
    if (excess > violation) violation = excess;
    if (excess > tol && first_failure == 0) first_failure = k;
  }
  v.gap = std::max(0.0, violation);
  v.collapsed = violation <= tol;

  std::ostringstream notes;
  notes << "certificate for " << phi.name << " along z at x0=" << x0
        << ": rearrangement gap " << format_double(gap_zy) << ", offset "
        << format_double(offset) << ", k up to " << k_max;
  if (v.collapsed) {
    notes << "; chain holds, demanding a constant pairing direction";
    if (gap_zy > tol) {
      // Forced only because 2*offset/k_max still dominates the gap; a
      // larger k_max would expose the violation.
      notes << " (slack 2*offset/k_max=" << format_double(2.0 * offset / k_max)
            << " still exceeds the gap; increase k_max to sharpen)";
    }
  } else {
    v.witness = y;
    notes << "; chain violated at k=" << first_failure
          << ": a constant pairing direction is demanded but y is nonconstant";
  }
  v.notes = notes.str();
  return v;
}

CollapseVerdict expectation_invariance_probe(
    const Functional& phi, int trials, std::uint64_t seed,
    const std::vector<std::pair<DiscreteLaw, DiscreteLaw>>& extra_pairs,
    double tol) {
  require_law_invariant(phi, "expectation_invariance_probe");
  if (trials < 0) {
    throw std::domain_error("expectation_invariance_probe: trials >= 0");
  }

  CollapseVerdict v;
  auto consider = [&](const DiscreteLaw& a, const DiscreteLaw& b) {
    const double dev = std::abs(phi(a) - phi(b));
    if (dev > v.gap) {
      v.gap = dev;
      v.witness = b;
    }
  };
  for (const auto& [a, b] : extra_pairs) consider(a, b);

  std::mt19937_64 rng(seed);
  auto draw_int = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  for (int t = 0; t < trials; ++t) {
    const int n = draw_int(2, 6);
    std::vector<double> values(static_cast<std::size_t>(n));
    bool constant = true;
    for (double& x : values) {
      x = 0.25 * draw_int(-16, 16);
      if (x != values.front()) constant = false;
    }
    if (constant) values.back() += 1.0;
    UniformSample u(values);
    // Random coarsening: each index joins block 0 or 1 (block 1 may be
    // empty, giving the trivial partition).
    std::vector<std::vector<std::size_t>> partition(1);
    std::vector<std::size_t> other;
    for (std::size_t i = 0; i < u.n(); ++i) {
      if (draw_int(0, 1) == 0) {
        partition[0].push_back(i);
      } else {
        other.push_back(i);
      }
    }
    if (partition[0].empty()) partition[0].swap(other);
    if (!other.empty()) partition.push_back(other);
    consider(u.law(), dilate(u, partition).law());
  }

  v.collapsed = v.gap <= tol;
  if (v.collapsed) v.witness.reset();
  std::ostringstream notes;
  notes << "probes: " << trials << " dilate-coarsening pairs (seed " << seed
        << ") plus " << extra_pairs.size() << " explicit pairs";
  v.notes = notes.str();
  return v;
}

CollapseVerdict choquet_symmetric_linearity(
    const Capacity& mu, const std::vector<UniformSample>& candidates,
    double tol) {
  if (mu.kind() != Capacity::Kind::JP) {
    throw std::domain_error(
        "choquet_symmetric_linearity: capacity must be of JP kind");
  }
  const double alpha = mu.alpha();  // JP construction excludes alpha = 1/2
  if (!is_law_invariant(mu)) {
    throw std::domain_error(
        "choquet_symmetric_linearity: capacity must be law invariant");
  }
  const int n = mu.atom_count();

  std::vector<UniformSample> probes;
  const std::uint32_t full = mu.full_mask();
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::vector<double> values(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) values[static_cast<std::size_t>(i)] = 1.0;
    }
    probes.emplace_back(std::move(values));
  }
  for (const UniformSample& c : candidates) {
    if (c.is_constant()) {
      throw std::domain_error(
          "choquet_symmetric_linearity: nonconstant Z required");
    }
    probes.push_back(c);
  }

  CollapseVerdict v;
  double slack = std::numeric_limits<double>::infinity();
  std::optional<UniformSample> witness;
  for (const UniformSample& z : probes) {
    std::vector<double> neg(z.values);
    for (double& x : neg) x = -x;
    const double dev =
        std::abs(choquet(mu, UniformSample(neg)).value + choquet(mu, z).value);
    if (dev < slack) slack = dev;
    if (dev <= tol) {
      witness = z;
      break;  // lowest candidate index wins
    }
  }

  std::ostringstream notes;
  notes << "scanned " << probes.size()
        << " candidates (all nonconstant 0/1 indicators on " << n
        << " atoms plus " << candidates.size() << " supplied), alpha="
        << alpha;
  if (!witness.has_value()) {
    v.collapsed = false;
    v.gap = slack;
    notes << "; no symmetric direction found";
    v.notes = notes.str();
    return v;
  }

  v.collapsed = true;
  v.gap = slack;
  v.witness = witness->law();

  const Capacity recovered = jp_recover_nu(mu, alpha);
  bool uniform = true;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    const double expected =
        static_cast<double>(std::popcount(mask)) / static_cast<double>(n);
    if (std::abs(recovered.eval(mask) - expected) > kTolerance) {
      uniform = false;
      break;
    }
  }
  if (uniform) {
    notes << "; witness found and the recovered base capacity is the uniform "
             "probability";
  } else {
    notes << "; inconsistency: witness found but the recovered base "
             "capacity is not uniform";
  }
  v.notes = notes.str();
  return v;
}

}  // namespace lawcalc
