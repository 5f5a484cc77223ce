#include <doctest.h>

#include <cmath>

#include "lawcalc/rearrange.hpp"
#include "support/generators.hpp"

using namespace lawcalc;

namespace {

DiscreteLaw z_law() {
  return DiscreteLaw({Atom{-1.0, 2.0 / 3.0}, Atom{2.0, 1.0 / 3.0}});
}

DiscreteLaw uniform123() { return UniformSample({1.0, 2.0, 3.0}).law(); }

}  // namespace

TEST_CASE("rearrangement bounds on the worked laws") {
  const DiscreteLaw z = z_law();
  CHECK(hl_upper(z, z) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(hl_lower(z, z) == doctest::Approx(-1.0).epsilon(1e-12));

  const DiscreteLaw c = DiscreteLaw::point_mass(2.5);
  CHECK(hl_upper(c, z) == doctest::Approx(2.5 * mean(z)).epsilon(1e-12));
  CHECK(hl_lower(c, z) == doctest::Approx(2.5 * mean(z)).epsilon(1e-12));

  const DiscreteLaw u = uniform123();
  CHECK(hl_upper(u, u) == doctest::Approx(14.0 / 3.0).epsilon(1e-12));
  CHECK(hl_lower(u, u) == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("couple attains the bounds with a stable tie-break") {
  const DiscreteLaw x({Atom{0.0, 2.0 / 3.0}, Atom{3.0, 1.0 / 3.0}});
  const UniformSample y({2.0, 1.0, 1.0});

  const CouplingResult anti = couple(x, y, CoupleKind::Antimonotone);
  CHECK(anti.inner_product == doctest::Approx(1.0).epsilon(1e-12));
  // ties in y broken by atom index: the 3 lands on the first y=1 atom
  CHECK(anti.x_rearranged.values == std::vector<double>{0.0, 3.0, 0.0});

  const CouplingResult como = couple(x, y, CoupleKind::Comonotone);
  CHECK(como.inner_product == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(como.x_rearranged.values[0] == 3.0);  // 3 sits on the y=2 atom

  const DiscreteLaw c = DiscreteLaw::point_mass(1.5);
  for (CoupleKind kind : {CoupleKind::Comonotone, CoupleKind::Antimonotone}) {
    const CouplingResult r = couple(c, y, kind);
    CHECK(r.inner_product ==
          doctest::Approx(1.5 * y.mean()).epsilon(1e-12));
  }

  CHECK_THROWS_AS(couple(x, UniformSample({1.0, 2.0}), CoupleKind::Comonotone),
                  std::domain_error);
}

TEST_CASE("strict gap values") {
  const auto [gz_lo, gz_hi] = strict_gap(z_law(), z_law());
  CHECK(gz_lo == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gz_hi == doctest::Approx(2.0).epsilon(1e-12));

  const auto [gu_lo, gu_hi] = strict_gap(uniform123(), uniform123());
  CHECK(gu_lo == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(gu_hi == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const auto [gc_lo, gc_hi] =
      strict_gap(DiscreteLaw::point_mass(4.0), z_law());
  CHECK(std::abs(gc_lo) <= 1e-12);
  CHECK(std::abs(gc_hi) <= 1e-12);
}

TEST_CASE("permutation oracle") {
  const auto [s_lo, s_hi] =
      oracle_extrema(UniformSample({1.5}), UniformSample({-2.0}));
  CHECK(s_lo == -3.0);
  CHECK(s_hi == -3.0);

  const UniformSample z3({2.0, -1.0, -1.0});
  const auto [z_lo, z_hi] = oracle_extrema(z3, z3);
  CHECK(z_lo == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(z_hi == doctest::Approx(2.0).epsilon(1e-12));

  const UniformSample u3({1.0, 2.0, 3.0});
  const auto [u_lo, u_hi] = oracle_extrema(u3, u3);
  CHECK(u_lo == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
  CHECK(u_hi == doctest::Approx(14.0 / 3.0).epsilon(1e-12));

  std::vector<double> big(9, 1.0);
  CHECK_THROWS_AS(oracle_extrema(UniformSample(big), UniformSample(big)),
                  std::domain_error);
  CHECK_THROWS_AS(oracle_extrema(u3, UniformSample({1.0, 2.0})),
                  std::domain_error);
}

TEST_CASE("bounds agree with the oracle on random pairs") {
  testgen::Rng rng(555);
  for (int i = 0; i < 250; ++i) {
    const int n = rng.uniform_int(2, 7);
    const UniformSample x = testgen::random_sample(rng, n);
    const UniformSample y = testgen::random_sample(rng, n);
    const auto [lo, hi] = oracle_extrema(x, y);
    CHECK(hl_lower(x.law(), y.law()) == doctest::Approx(lo).epsilon(1e-9));
    CHECK(hl_upper(x.law(), y.law()) == doctest::Approx(hi).epsilon(1e-9));
  }
}

TEST_CASE("couplings always attain the bounds") {
  testgen::Rng rng(556);
  for (int i = 0; i < 300; ++i) {
    const int n = rng.uniform_int(1, 8);
    const UniformSample x = testgen::random_sample(rng, n);
    const UniformSample y = testgen::random_sample(rng, n);
    const CouplingResult hi = couple(x.law(), y, CoupleKind::Comonotone);
    const CouplingResult lo = couple(x.law(), y, CoupleKind::Antimonotone);
    CHECK(std::abs(hi.inner_product - hl_upper(x.law(), y.law())) <= 1e-9);
    CHECK(std::abs(lo.inner_product - hl_lower(x.law(), y.law())) <= 1e-9);
    CHECK(is_comonotone_pair(hi.x_rearranged, y));
    CHECK(is_antimonotone_pair(lo.x_rearranged, y));

    // the arrangement is a permutation of the input values
    std::vector<double> expected(x.values);
    std::sort(expected.begin(), expected.end());
    for (const CouplingResult* r : {&hi, &lo}) {
      std::vector<double> got(r->x_rearranged.values);
      std::sort(got.begin(), got.end());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("mean product is strictly inside the bounds for nonconstant laws") {
  testgen::Rng rng(557);
  for (int i = 0; i < 300; ++i) {
    const DiscreteLaw x = testgen::random_nonconstant_law(rng);
    const DiscreteLaw y = testgen::random_nonconstant_law(rng);
    const auto [lo_gap, hi_gap] = strict_gap(x, y);
    CHECK(lo_gap > 1e-12);
    CHECK(hi_gap > 1e-12);
  }
}

TEST_CASE("reflection antisymmetry of the bounds") {
  testgen::Rng rng(558);
  for (int i = 0; i < 200; ++i) {
    const DiscreteLaw x = testgen::random_law(rng);
    const DiscreteLaw y = testgen::random_law(rng);
    CHECK(hl_lower(x, y) ==
          doctest::Approx(-hl_upper(reflect(x), y)).epsilon(1e-9));
  }
}
