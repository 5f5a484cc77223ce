#include "lawcalc/capacities.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lawcalc {

namespace {

constexpr int kMaxExhaustiveAtoms = 16;

void require_small(const Capacity& mu, const char* what) {
  if (mu.atom_count() > kMaxExhaustiveAtoms) {
    throw std::domain_error(std::string(what) + ": refused for n > 16");
  }
}

double interpolate(const std::vector<std::pair<double, double>>& knots,
                   double u) {
  auto it = std::lower_bound(
      knots.begin(), knots.end(), u,
      [](const std::pair<double, double>& k, double v) { return k.first < v; });
  if (it == knots.begin()) return it->second;
  if (it == knots.end()) return knots.back().second;
  const auto& [u1, t1] = *it;
  const auto& [u0, t0] = *(it - 1);
  if (u == u1) return t1;
  return t0 + (t1 - t0) * (u - u0) / (u1 - u0);
}

}  // namespace

Capacity Capacity::distortion(int n,
                              std::vector<std::pair<double, double>> knots) {
  if (n < 1 || n > 31) throw std::domain_error("Capacity: need 1 <= n <= 31");
  if (knots.size() < 2 || knots.front().first != 0.0 ||
      knots.back().first != 1.0) {
    throw std::domain_error("Capacity: distortion knots must span [0,1]");
  }
  if (std::abs(knots.front().second) > 1e-12 ||
      std::abs(knots.back().second - 1.0) > 1e-12) {
    throw std::domain_error("Capacity: distortion needs T(0)=0, T(1)=1");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first) ||
        knots[i].second < knots[i - 1].second) {
      throw std::domain_error(
          "Capacity: distortion knots must increase in u, nondecrease in T");
    }
  }
  Capacity c;
  c.kind_ = Kind::Distortion;
  c.n_ = n;
  c.knots_ = std::move(knots);
  return c;
}

Capacity Capacity::density_family(
    std::vector<std::vector<double>> densities) {
  if (densities.empty()) {
    throw std::domain_error("Capacity: density family must be nonempty");
  }
  const std::size_t n = densities.front().size();
  if (n == 0 || n > 31) throw std::domain_error("Capacity: need 1 <= n <= 31");
  for (const auto& d : densities) {
    if (d.size() != n) {
      throw std::domain_error("Capacity: densities must share one length");
    }
    double sum = 0.0;
    for (double v : d) {
      if (v < -1e-12) {
        throw std::domain_error("Capacity: densities must be nonnegative");
      }
      sum += v;
    }
    if (std::abs(sum / static_cast<double>(n) - 1.0) > 1e-9) {
      throw std::domain_error("Capacity: densities must average to 1");
    }
  }
  Capacity c;
  c.kind_ = Kind::DensityFamily;
  c.n_ = static_cast<int>(n);
  c.densities_ = std::move(densities);
  return c;
}

Capacity Capacity::jp(Capacity nu, double alpha) {
  if (nu.kind() != Kind::DensityFamily) {
    throw std::domain_error("Capacity: JP base must be a density family");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("Capacity: JP alpha must lie in [0,1]");
  }
  if (std::abs(alpha - 0.5) < 1e-12) {
    throw std::domain_error("Capacity: JP alpha = 1/2 is excluded");
  }
  Capacity c;
  c.kind_ = Kind::JP;
  c.n_ = nu.atom_count();
  c.alpha_ = alpha;
  c.nu_ = std::make_shared<Capacity>(std::move(nu));
  return c;
}

Capacity Capacity::explicit_values(int n, std::vector<double> values) {
  if (n < 1 || n > kMaxExhaustiveAtoms) {
    throw std::domain_error("Capacity: explicit kind needs 1 <= n <= 16");
  }
  if (values.size() != (std::size_t{1} << n)) {
    throw std::domain_error("Capacity: explicit table must have 2^n entries");
  }
  if (std::abs(values.front()) > 1e-6 || std::abs(values.back() - 1.0) > 1e-6) {
    throw std::domain_error(
        "Capacity: explicit table needs mu(empty)=0, mu(full)=1");
  }
  Capacity c;
  c.kind_ = Kind::Explicit;
  c.n_ = n;
  c.values_ = std::move(values);
  return c;
}

Capacity Capacity::explicit_partial(
    int n, const std::vector<std::pair<std::uint32_t, double>>& entries) {
  if (n < 1 || n > kMaxExhaustiveAtoms) {
    throw std::domain_error("Capacity: explicit kind needs 1 <= n <= 16");
  }
  std::vector<double> values(std::size_t{1} << n,
                             std::numeric_limits<double>::quiet_NaN());
  for (const auto& [mask, v] : entries) {
    if (mask >= values.size()) {
      throw std::domain_error("Capacity: subset mask out of range");
    }
    values[mask] = v;
  }
  if (!std::isnan(values[0]) && std::abs(values[0]) > 1e-6) {
    throw std::domain_error("Capacity: explicit table needs mu(empty)=0");
  }
  if (!std::isnan(values.back()) && std::abs(values.back() - 1.0) > 1e-6) {
    throw std::domain_error("Capacity: explicit table needs mu(full)=1");
  }
  values[0] = 0.0;
  if (std::isnan(values.back())) values.back() = 1.0;
  Capacity c;
  c.kind_ = Kind::Explicit;
  c.n_ = n;
  c.values_ = std::move(values);
  return c;
}

Capacity Capacity::uniform_probability(int n) {
  return distortion(n, {{0.0, 0.0}, {1.0, 1.0}});
}

double Capacity::eval(std::uint32_t subset) const {
  if (n_ < 32 && subset > full_mask()) {
    throw std::domain_error("Capacity: subset mask out of range");
  }
  switch (kind_) {
    case Kind::Distortion: {
      const int k = std::popcount(subset);
      return interpolate(knots_, static_cast<double>(k) / n_);
    }
    case Kind::DensityFamily: {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& d : densities_) {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) {
          if (subset & (std::uint32_t{1} << i)) s += d[static_cast<std::size_t>(i)];
        }
        best = std::max(best, s / n_);
      }
      return best;
    }
    case Kind::JP: {
      const std::uint32_t comp = full_mask() & ~subset;
      return alpha_ * nu_->eval(subset) +
             (1.0 - alpha_) * (1.0 - nu_->eval(comp));
    }
    case Kind::Explicit: {
      const double v = values_[subset];
      if (std::isnan(v)) {
        throw std::domain_error("Capacity: unknown subset key");
      }
      return v;
    }
  }
  throw std::logic_error("Capacity: unreachable kind");
}

Capacity Capacity::dual() const {
  switch (kind_) {
    case Kind::Distortion: {
      std::vector<std::pair<double, double>> reflected;
      reflected.reserve(knots_.size());
      for (auto it = knots_.rbegin(); it != knots_.rend(); ++it) {
        reflected.emplace_back(1.0 - it->first, 1.0 - it->second);
      }
      return distortion(n_, std::move(reflected));
    }
    case Kind::JP:
      return jp(*nu_, 1.0 - alpha_);
    case Kind::DensityFamily:
    case Kind::Explicit: {
      require_small(*this, "Capacity::dual");
      const std::uint32_t full = full_mask();
      std::vector<double> values(std::size_t{1} << n_);
      for (std::uint32_t mask = 0; mask <= full; ++mask) {
        values[mask] = 1.0 - eval(full & ~mask);
      }
      return explicit_values(n_, std::move(values));
    }
  }
  throw std::logic_error("Capacity: unreachable kind");
}

double Capacity::alpha() const {
  if (kind_ != Kind::JP) throw std::domain_error("Capacity: not a JP capacity");
  return alpha_;
}

const Capacity& Capacity::nu() const {
  if (kind_ != Kind::JP) throw std::domain_error("Capacity: not a JP capacity");
  return *nu_;
}

const std::vector<std::pair<double, double>>& Capacity::knots() const {
  if (kind_ != Kind::Distortion) {
    throw std::domain_error("Capacity: not a distortion capacity");
  }
  return knots_;
}

const std::vector<std::vector<double>>& Capacity::densities() const {
  if (kind_ != Kind::DensityFamily) {
    throw std::domain_error("Capacity: not a density-family capacity");
  }
  return densities_;
}

ChoquetValue choquet(const Capacity& mu, const UniformSample& x) {
  if (static_cast<int>(x.n()) != mu.atom_count()) {
    throw std::domain_error("choquet: sample and capacity dimensions differ");
  }
  std::vector<double> distinct(x.values);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  ChoquetValue out;
  out.value = distinct.front();
  for (std::size_t j = 1; j < distinct.size(); ++j) {
    std::uint32_t upper = 0;
    for (std::size_t i = 0; i < x.n(); ++i) {
      if (x.values[i] >= distinct[j]) upper |= std::uint32_t{1} << i;
    }
    const double cap = mu.eval(upper);
    out.value += (distinct[j] - distinct[j - 1]) * cap;
    out.layer_trace.emplace_back(distinct[j], cap);
  }
  return out;
}

SubmodularityResult is_submodular(const Capacity& mu, double tol) {
  require_small(mu, "is_submodular");
  const std::vector<double> table = explicit_table(mu);
  const int n = mu.atom_count();
  const std::uint32_t full = mu.full_mask();
  for (std::uint32_t a = 0; a <= full; ++a) {
    for (int i = 0; i < n; ++i) {
      const std::uint32_t bi = std::uint32_t{1} << i;
      if (a & bi) continue;
      for (int j = i + 1; j < n; ++j) {
        const std::uint32_t bj = std::uint32_t{1} << j;
        if (a & bj) continue;
        const double lhs = table[a | bi | bj] + table[a];
        const double rhs = table[a | bi] + table[a | bj];
        if (lhs > rhs + tol) {
          return SubmodularityResult{false, std::make_pair(a | bi, a | bj)};
        }
      }
    }
  }
  return SubmodularityResult{true, std::nullopt};
}

bool is_law_invariant(const Capacity& mu, double tol) {
  require_small(mu, "is_law_invariant");
  const int n = mu.atom_count();
  std::vector<double> by_card(static_cast<std::size_t>(n) + 1,
                              std::numeric_limits<double>::quiet_NaN());
  const std::uint32_t full = mu.full_mask();
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    const double v = mu.eval(mask);
    const int k = std::popcount(mask);
    if (std::isnan(by_card[static_cast<std::size_t>(k)])) {
      by_card[static_cast<std::size_t>(k)] = v;
    } else if (std::abs(v - by_card[static_cast<std::size_t>(k)]) > tol) {
      return false;
    }
  }
  return true;
}

bool is_monotone(const Capacity& mu, double tol) {
  require_small(mu, "is_monotone");
  const std::vector<double> table = explicit_table(mu);
  const int n = mu.atom_count();
  const std::uint32_t full = mu.full_mask();
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    for (int i = 0; i < n; ++i) {
      const std::uint32_t bi = std::uint32_t{1} << i;
      if (mask & bi) continue;
      if (table[mask] > table[mask | bi] + tol) return false;
    }
  }
  return true;
}

Capacity jp_recover_nu(const Capacity& mu, double alpha) {
  if (std::abs(alpha - 0.5) < 1e-12) {
    throw std::domain_error("jp_recover_nu: JP polarisation undefined for alpha = 1/2");
  }
  require_small(mu, "jp_recover_nu");
  const Capacity bar = mu.dual();
  const double ca = alpha / (2.0 * alpha - 1.0);
  const double cb = (1.0 - alpha) / (2.0 * alpha - 1.0);
  const std::uint32_t full = mu.full_mask();
  std::vector<double> values(std::size_t{1} << mu.atom_count());
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    values[mask] = ca * mu.eval(mask) - cb * bar.eval(mask);
  }
  values[0] = 0.0;
  values.back() = 1.0;
  return Capacity::explicit_values(mu.atom_count(), std::move(values));
}

Capacity neo_additive(const std::vector<double>& q, double delta,
                      double alpha) {
  const int n = static_cast<int>(q.size());
  if (n < 1 || n > kMaxExhaustiveAtoms) {
    throw std::domain_error("neo_additive: needs 1 <= n <= 16");
  }
  double sum = 0.0;
  for (double v : q) {
    if (v < -1e-12) throw std::domain_error("neo_additive: q must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::domain_error("neo_additive: q must sum to 1");
  }
  if (!(delta >= 0.0 && delta <= 1.0) || !(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("neo_additive: delta, alpha must lie in [0,1]");
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<double> values(std::size_t{1} << n, 0.0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    double prob = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) prob += q[static_cast<std::size_t>(i)];
    }
    values[mask] = (1.0 - delta) * prob + (1.0 - alpha) * delta +
                   (mask == full ? alpha * delta : 0.0);
  }
  values[0] = 0.0;
  values.back() = 1.0;
  return Capacity::explicit_values(n, std::move(values));
}

std::vector<double> explicit_table(const Capacity& mu) {
  require_small(mu, "explicit_table");
  const std::uint32_t full = mu.full_mask();
  std::vector<double> table(std::size_t{1} << mu.atom_count());
  for (std::uint32_t mask = 0; mask <= full; ++mask) table[mask] = mu.eval(mask);
  return table;
}

}  // namespace lawcalc
