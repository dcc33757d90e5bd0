#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "polya/jensen.hpp"
#include "polya/regions.hpp"
#include "support.hpp"

namespace polya {
namespace {

void expect_coeffs(const Polynomial& p, const std::vector<Complex>& want, double tol = 1e-14) {
  ASSERT_EQ(p.coeffs().size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_LT(std::abs(p[k] - want[k]), tol) << "k=" << k;
}

// True when some zero moves across the boundary of x between a loose and an
// exact tolerance.
bool boundary_ambiguous(const RootSet& rs, const Region& x) {
  for (const auto& r : rs.roots)
    if (x.with_tol(1e-6).contains(r.z) != x.with_tol(1e-12).contains(r.z)) return true;
  return false;
}

TEST(Appell, KnownValues) {
  expect_coeffs(appell(PowerSeries{1.0}, 4), {0.0, 0.0, 0.0, 0.0, 1.0});
  expect_coeffs(appell(exp_series(10), 3), {1.0, 3.0, 3.0, 1.0});
  expect_coeffs(appell(PowerSeries{0.0, 1.0}, 2), {0.0, 2.0});
  EXPECT_THROW(appell(exp_series(3), -1), InvalidArgument);
}

TEST(Jensen, KnownValues) {
  expect_coeffs(jensen(exp_series(10), 2), {1.0, 2.0, 1.0});
  expect_coeffs(jensen(PowerSeries{1.0}, 7), {1.0});
  // Missing coefficients beyond the truncation order count as zero.
  expect_coeffs(jensen(exp_series(1), 3), {1.0, 3.0});
}

TEST(Jensen, ReversalIdentity) {
  const PowerSeries f{1.0, -2.0, 0.5, 3.0};
  for (int n = 3; n <= 8; ++n) {
    auto c = jensen(f, n).coeffs();
    c.resize(static_cast<std::size_t>(n) + 1, 0.0);
    std::reverse(c.begin(), c.end());
    EXPECT_EQ(appell(f, n), Polynomial(c));
  }
}

TEST(Jensen, ExpGivesBinomialCoefficients) {
  for (int n = 0; n <= 30; ++n) {
    const auto j = jensen(exp_series(n), n);
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) binom = binom * (n - k + 1) / k;
      EXPECT_LE(std::abs(j[k] - binom), 1e-12 * binom) << n << "," << k;
    }
  }
}

TEST(Jensen, OverflowIsAnError) {
  EXPECT_THROW(jensen(PowerSeries(std::vector<Complex>(200, 1.0)), 199), Overflow);
  // Absent coefficients never trigger the check.
  EXPECT_NO_THROW(jensen(PowerSeries{1.0, 1.0}, 400));
}

TEST(JensenSequence, KnownValues) {
  expect_coeffs(jensen_sequence_member(exp_series(5), 1), {1.0, 1.0});
  expect_coeffs(jensen_sequence_member(exp_series(5), 2), {1.0, 1.0, 0.25});
  expect_coeffs(jensen_sequence_member(PowerSeries{1.0}, 9), {1.0});
  EXPECT_THROW(jensen_sequence_member(exp_series(5), 0), InvalidArgument);
}

TEST(JensenSequence, AgreesWithScaledJensenAndHandlesLargeN) {
  const auto f = cos_series(40);
  for (int n : {3, 10, 40}) {
    const auto a = jensen_sequence_member(f, n), b = scale_argument(jensen(f, n), 1.0 / n);
    ASSERT_EQ(a.degree(), b.degree());
    for (int k = 0; k <= a.degree(); ++k) EXPECT_LE(std::abs(a[k] - b[k]), 1e-14 * std::max(1.0, std::abs(b[k])));
  }
  // 300!/(300-k)! overflows, the scaled weights do not.
  const auto big = jensen_sequence_member(exp_series(300), 300);
  EXPECT_NEAR(big(-1.0).real(), std::pow(1.0 - 1.0 / 300, 300), 1e-13);
}

TEST(HermitePoulain, KnownValues) {
  expect_coeffs(hermite_poulain(Polynomial{1.0, 0.0, 1.0}, 0.0), {0.0, 2.0});
  expect_coeffs(hermite_poulain(Polynomial{-1.0, 0.0, 1.0}, 1.0), {1.0, 2.0, -1.0});
  EXPECT_EQ(count_zeros(hermite_poulain(Polynomial{-1.0, 0.0, 1.0}, 1.0), !Region::real_line()), 0);
  expect_coeffs(hermite_poulain(Polynomial{2.5}, 1.0), {-2.5});
}

// Properties.

TEST(JensenProperty, AppellDerivativeRecurrence) {
  testing::Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Complex> a;
    for (int k = 0; k <= 15; ++k) a.emplace_back(testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1));
    const PowerSeries f(a);
    for (int n = 1; n <= 15; ++n) {
      const auto lhs = derivative(appell(f, n)), rhs = static_cast<double>(n) * appell(f, n - 1);
      ASSERT_EQ(lhs.degree(), rhs.degree());
      for (int k = 0; k <= lhs.degree(); ++k)
        EXPECT_LE(std::abs(lhs[k] - rhs[k]), 1e-12 * std::max(1.0, std::abs(rhs[k])));
    }
  }
}

TEST(JensenProperty, LinearFactorIdentity) {
  testing::Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Complex> gc;
    for (int k = 0; k <= 5; ++k) gc.emplace_back(testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1));
    const Polynomial g(gc);
    const Complex a(testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2));
    const auto f = Polynomial{-a, 1.0} * g;
    for (int n = 0; n <= 9; ++n) {
      const auto lhs = appell(to_series(f, n), n);
      const auto rhs = derivative(appell(to_series(g, n), n)) - a * appell(to_series(g, n), n);
      const double scale = std::max(1.0, lhs.max_abs_coeff());
      for (int k = 0; k <= n; ++k) EXPECT_LE(std::abs(lhs[k] - rhs[k]), 1e-12 * scale);
    }
  }
}

TEST(JensenProperty, NonRealCountDoesNotIncrease) {
  testing::Rng rng(53);
  const auto off_axis = !Region::real_line();
  int excluded = 0, checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = testing::uniform_int(rng, 1, 8);
    const auto f = from_roots(testing::real_root_set(rng, deg, 0.3, 3.0));
    const auto bound = count_zeros(f, off_axis);
    for (int n = 1; n <= deg + 3; ++n) {
      const auto j = jensen(to_series(f, deg), n);
      if (j.degree() < 1) continue;
      const auto rs = find_roots(j);
      if (boundary_ambiguous(rs, Region::real_line())) {
        ++excluded;
        continue;
      }
      ++checked;
      EXPECT_LE(count_in(rs, off_axis), bound);
    }
  }
  EXPECT_LT(excluded, checked / 20 + 1);
}

TEST(JensenProperty, UpperHalfPlaneIsPreserved) {
  testing::Rng rng(54);
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = testing::uniform_int(rng, 1, 8);
    std::vector<Complex> roots;
    for (int j = 0; j < deg; ++j) roots.emplace_back(testing::uniform(rng, -3, 3), testing::uniform(rng, 0, 3));
    const auto f = to_series(from_roots(roots), deg);
    for (int n = 1; n <= 10; ++n) {
      const auto j = jensen(f, n);
      if (j.degree() < 1) continue;
      for (Complex z : flatten(find_roots(j))) EXPECT_GE(z.imag(), -1e-7 * (1.0 + std::abs(z)));
    }
  }
}

TEST(HermitePoulainProperty, CountsDoNotIncrease) {
  testing::Rng rng(55);
  const auto off_axis = !Region::real_line(), off_ray = !Region::nonnegative_ray();
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = testing::uniform_int(rng, 1, 8);
    const auto h = from_roots(testing::real_root_set(rng, deg, 0.3, 3.0));
    const auto hr = find_roots(h);

    const double b = testing::uniform(rng, -3, 3);
    const auto g = hermite_poulain(h, b);
    if (g.degree() >= 1) {
      const auto gr = find_roots(g);
      if (!boundary_ambiguous(gr, Region::real_line())) {
        EXPECT_LE(count_in(gr, off_axis), count_in(hr, off_axis));
      }
    }
    const auto g0 = hermite_poulain(h, std::abs(b));
    if (g0.degree() >= 1) {
      const auto gr = find_roots(g0);
      if (!boundary_ambiguous(gr, Region::nonnegative_ray())) {
        EXPECT_LE(count_in(gr, off_ray), count_in(hr, off_ray));
      }
    }
  }
}

TEST(JensenProperty, Linearity) {
  testing::Rng rng(56);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Complex> a, b;
    for (int k = 0; k <= 10; ++k) {
      a.emplace_back(testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1));
      b.emplace_back(testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1));
    }
    const Complex s(testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2));
    std::vector<Complex> mix;
    for (std::size_t k = 0; k < a.size(); ++k) mix.push_back(a[k] + s * b[k]);
    for (int n = 0; n <= 10; ++n) {
      const auto lhs = jensen(PowerSeries(mix), n);
      const auto rhs = jensen(PowerSeries(a), n) + s * jensen(PowerSeries(b), n);
      for (int k = 0; k <= n; ++k) EXPECT_LE(std::abs(lhs[k] - rhs[k]), 1e-12 * std::max(1.0, std::abs(rhs[k])));
    }
  }
}

}  // namespace
}  // namespace polya
