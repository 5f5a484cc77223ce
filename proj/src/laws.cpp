#include "lawcalc/laws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace lawcalc {

DiscreteLaw::DiscreteLaw(std::vector<Atom> atoms) {
  if (atoms.empty()) {
    throw std::domain_error("DiscreteLaw: at least one atom required");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  // Merge equal values, adding probabilities.
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.value) || !std::isfinite(a.prob)) {
      throw std::domain_error("DiscreteLaw: non-finite atom");
    }
    if (!atoms_.empty() && a.value == atoms_.back().value) {
      atoms_.back().prob += a.prob;
    } else {
      atoms_.push_back(a);
    }
  }
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (a.prob < kMinAtomProb) {
      throw std::domain_error("DiscreteLaw: atom probability below 1e-15");
    }
    total += a.prob;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw std::domain_error("DiscreteLaw: probabilities must sum to 1");
  }
  for (Atom& a : atoms_) a.prob /= total;
}

DiscreteLaw DiscreteLaw::point_mass(double value) {
  return DiscreteLaw({Atom{value, 1.0}});
}

QuantileFn DiscreteLaw::quantile_fn() const {
  std::vector<double> breakpoints;
  std::vector<double> levels;
  breakpoints.reserve(atoms_.size() + 1);
  levels.reserve(atoms_.size());
  breakpoints.push_back(0.0);
  double cum = 0.0;
  for (const Atom& a : atoms_) {
    cum += a.prob;
    breakpoints.push_back(cum);
    levels.push_back(a.value);
  }
  breakpoints.back() = 1.0;  // kill cumulative drift
  return QuantileFn(std::move(breakpoints), std::move(levels));
}

QuantileFn::QuantileFn(std::vector<double> breakpoints,
                       std::vector<double> levels)
    : breakpoints_(std::move(breakpoints)), levels_(std::move(levels)) {
  if (breakpoints_.size() != levels_.size() + 1 || levels_.empty()) {
    throw std::domain_error("QuantileFn: need k+1 breakpoints for k levels");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw std::domain_error("QuantileFn: breakpoints must start at 0, end at 1");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) {
      throw std::domain_error("QuantileFn: breakpoints must strictly increase");
    }
  }
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (levels_[i] < levels_[i - 1]) {
      throw std::domain_error("QuantileFn: levels must be nondecreasing");
    }
  }
}

double QuantileFn::operator()(double s) const {
  if (!(s > 0.0) || s > 1.0) {
    throw std::domain_error("QuantileFn: argument outside (0,1]");
  }
  // q(s) = v_i on (s_{i-1}, s_i]: first breakpoint >= s.
  auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), s);
  return levels_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

DiscreteLaw QuantileFn::to_law() const {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    atoms.push_back(Atom{levels_[i], breakpoints_[i + 1] - breakpoints_[i]});
  }
  return DiscreteLaw(std::move(atoms));
}

UniformSample::UniformSample(std::vector<double> v) : values(std::move(v)) {
  if (values.empty()) {
    throw std::domain_error("UniformSample: n >= 1 required");
  }
  for (double x : values) {
    if (!std::isfinite(x)) {
      throw std::domain_error("UniformSample: non-finite value");
    }
  }
}

double UniformSample::mean() const {
  double sum = 0.0;
  for (double x : values) sum += x;
  return sum / static_cast<double>(values.size());
}

bool UniformSample::is_constant() const {
  for (double x : values) {
    if (x != values.front()) return false;
  }
  return true;
}

DiscreteLaw UniformSample::law() const {
  const double w = 1.0 / static_cast<double>(values.size());
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  for (double x : values) atoms.push_back(Atom{x, w});
  return DiscreteLaw(std::move(atoms));
}

double quantile(const DiscreteLaw& law, double s) {
  if (!(s > 0.0) || !(s < 1.0)) {
    throw std::domain_error("quantile: s must lie in (0,1)");
  }
  return law.quantile_fn()(s);
}

double mean(const DiscreteLaw& law) {
  double sum = 0.0;
  for (const Atom& a : law.atoms()) sum += a.value * a.prob;
  return sum;
}

double partial_integral(const QuantileFn& q, double a, double b) {
  if (a > b || a < 0.0 || b > 1.0) {
    throw std::domain_error("partial_integral: need 0 <= a <= b <= 1");
  }
  const auto& bp = q.breakpoints();
  const auto& lv = q.levels();
  double sum = 0.0;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const double lo = std::max(a, bp[i]);
    const double hi = std::min(b, bp[i + 1]);
    if (hi > lo) sum += lv[i] * (hi - lo);
  }
  return sum;
}

double tail_integral(const QuantileFn& q, double p) {
  return partial_integral(q, p, 1.0);
}

namespace {

// Merged breakpoint grid of two quantile functions (sorted, deduplicated,
// containing 0 and 1). Tail integrals are piecewise linear in p with kinks
// only here, so order comparisons on this grid are exhaustive.
std::vector<double> merged_grid(const QuantileFn& qx, const QuantileFn& qy) {
  std::vector<double> grid = qx.breakpoints();
  grid.insert(grid.end(), qy.breakpoints().begin(), qy.breakpoints().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

bool tails_dominate(const QuantileFn& qx, const QuantileFn& qy, double tol) {
  for (double p : merged_grid(qx, qy)) {
    if (tail_integral(qx, p) < tail_integral(qy, p) - tol) return false;
  }
  return true;
}

}  // namespace

bool convex_order_dominates(const DiscreteLaw& x, const DiscreteLaw& y,
                            double tol) {
  if (std::abs(mean(x) - mean(y)) > tol) return false;
  return tails_dominate(x.quantile_fn(), y.quantile_fn(), tol);
}

bool ssd_dominated(const DiscreteLaw& x, const DiscreteLaw& y, double tol) {
  return tails_dominate(x.quantile_fn(), y.quantile_fn(), tol);
}

UniformSample dilate(const UniformSample& x,
                     const std::vector<std::vector<std::size_t>>& partition) {
  const std::size_t n = x.n();
  std::vector<bool> seen(n, false);
  for (const auto& block : partition) {
    if (block.empty()) {
      throw std::domain_error("dilate: empty partition block");
    }
    for (std::size_t i : block) {
      if (i >= n || seen[i]) {
        throw std::domain_error("dilate: partition must be disjoint and in range");
      }
      seen[i] = true;
    }
  }
  for (bool s : seen) {
    if (!s) throw std::domain_error("dilate: partition must cover all atoms");
  }
  std::vector<double> out(x.values);
  for (const auto& block : partition) {
    double avg = 0.0;
    for (std::size_t i : block) avg += x.values[i];
    avg /= static_cast<double>(block.size());
    for (std::size_t i : block) out[i] = avg;
  }
  return UniformSample(std::move(out));
}

DiscreteLaw ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("ingest_csv: cannot open " + path);
  }
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const char* start = line.c_str();
    char* end = nullptr;
    double v = std::strtod(start, &end);
    while (end && *end == ' ') ++end;
    if (end == start || (end && *end != '\0')) {
      throw std::runtime_error("ingest_csv: non-numeric line '" + line + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw std::runtime_error("ingest_csv: no values in " + path);
  }
  return UniformSample(std::move(values)).law();
}

DiscreteLaw affine(const DiscreteLaw& law, double scale, double offset) {
  std::vector<Atom> atoms;
  atoms.reserve(law.size());
  for (const Atom& a : law.atoms()) {
    atoms.push_back(Atom{scale * a.value + offset, a.prob});
  }
  return DiscreteLaw(std::move(atoms));
}

DiscreteLaw reflect(const DiscreteLaw& law) { return affine(law, -1.0, 0.0); }

UniformSample expand_to_sample(const DiscreteLaw& law, std::size_t n,
                               double tol) {
  std::vector<double> out;
  out.reserve(n);
  for (const Atom& a : law.atoms()) {
    const double exact = a.prob * static_cast<double>(n);
    const auto count = static_cast<long>(std::llround(exact));
    if (count < 1 || std::abs(exact - static_cast<double>(count)) > tol * static_cast<double>(n)) {
      throw std::domain_error(
          "expand_to_sample: probabilities are not multiples of 1/n");
    }
    out.insert(out.end(), static_cast<std::size_t>(count), a.value);
  }
  if (out.size() != n) {
    throw std::domain_error(
        "expand_to_sample: probabilities are not multiples of 1/n");
  }
  return UniformSample(std::move(out));
}

}  // namespace lawcalc
