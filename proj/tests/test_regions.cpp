#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "polya/regions.hpp"
#include "support.hpp"

namespace polya {
namespace {

const Complex I{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Region, Membership) {
  EXPECT_TRUE(Region::upper_half_plane().contains(I));
  EXPECT_FALSE(Region::upper_half_plane().contains(-I));
  EXPECT_TRUE(Region::upper_half_plane().contains(-3.0));
  EXPECT_TRUE(Region::sector(kInf).contains(I));
  EXPECT_TRUE(Region::closed_right_half_plane().contains(I));
  EXPECT_TRUE(Region::sector_root(kInf, 2).contains(std::polar(1.0, std::numbers::pi / 4)));
  EXPECT_FALSE(Region::sector_root(kInf, 2).contains(std::polar(1.0, std::numbers::pi / 3)));
  EXPECT_TRUE(Region::real_line().contains(2.5));
  EXPECT_TRUE(Region::disk(1.5).contains(1.5));
  EXPECT_FALSE(Region::disk(1.5).contains(1.6));
}

TEST(Region, SectorBoundaries) {
  // S_c has half-angle atan(c).
  const double c = 2.0;
  const auto s = Region::sector(c);
  EXPECT_TRUE(s.contains(std::polar(3.0, std::atan(c))));
  EXPECT_FALSE(s.contains(std::polar(3.0, std::atan(c) + 1e-3)));
  EXPECT_TRUE(s.contains(0.0));
  EXPECT_TRUE(Region::sector(0.0).contains(4.0));
  EXPECT_FALSE(Region::sector(0.0).contains(Complex(4.0, 0.01)));
  EXPECT_FALSE(Region::nonnegative_ray().contains(-1.0));
}

TEST(Region, ToleranceScalesWithModulus) {
  const auto r = Region::real_line(1e-9);
  EXPECT_TRUE(r.contains(Complex(1e6, 5e-4)));
  EXPECT_FALSE(r.contains(Complex(1.0, 5e-4)));
  EXPECT_TRUE(Region::upper_half_plane().contains(Complex(-7.0, -1e-12)));
}

TEST(Region, ComplementExcludesBoundary) {
  const auto off_axis = Region::real_line().complement();
  EXPECT_FALSE(off_axis.contains(Complex(2.0, 1e-12)));
  EXPECT_TRUE(off_axis.contains(Complex(2.0, 1e-3)));
  EXPECT_FALSE((!Region::closed_right_half_plane()).contains(I));
}

TEST(Region, ParseAndPrint) {
  for (const char* s : {"H", "R", "RHP", "ray", "S:2", "S:inf", "S:2^1/3", "D:1.5", "!R", "!ray", "!S:0.5^1/2"}) {
    const auto r = Region::parse(s);
    EXPECT_EQ(r.to_string(), s);
  }
  EXPECT_EQ(Region::parse("!H").inner()->kind(), Region::Kind::UpperHalfPlane);
  EXPECT_THROW(Region::parse(""), ParseError);
  EXPECT_THROW(Region::parse("Q"), ParseError);
  EXPECT_THROW(Region::parse("S:x"), ParseError);
  EXPECT_THROW(Region::parse("S:1^1/0"), ParseError);
  EXPECT_THROW(Region::parse("D:-1"), InvalidArgument);
}

TEST(CountZeros, KnownValues) {
  EXPECT_EQ(count_zeros(Polynomial{1.0, 0.0, 1.0}, Region::real_line().complement()), 2);
  EXPECT_EQ(count_zeros(from_roots({1.0, 1.0, -I}), Region::upper_half_plane()), 2);
  EXPECT_EQ(count_zeros(from_roots({1.0, 1.0, -I}), Region::upper_half_plane().complement()), 1);
  EXPECT_EQ(count_zeros(Polynomial{1.0, 0.0, 1.0}, Region::nonnegative_ray().complement()), 2);
  EXPECT_EQ(count_zeros(Polynomial{}, Region::upper_half_plane()), 0);
  EXPECT_EQ(count_zeros(Polynomial{4.0}, Region::upper_half_plane()), 0);
}

TEST(CountZeros, ExplicitBoundaryTolerance) {
  // Zero at 1 + 1e-6 i: real with tol 1e-5, non-real with tol 1e-9.
  const auto p = from_roots({Complex(1.0, 1e-6)});
  EXPECT_EQ(count_zeros(p, Region::real_line(), 1e-5), 1);
  EXPECT_EQ(count_zeros(p, Region::real_line(), 1e-9), 0);
}

TEST(FindEvenPower, KnownValues) {
  EXPECT_EQ(find_even_power({1.0, -1.0}, 64), 2);
  EXPECT_EQ(find_even_power({I}, 64), 4);
  EXPECT_EQ(find_even_power({std::polar(1.0, std::numbers::pi / 3)}, 64), 6);
  EXPECT_EQ(find_even_power({0.0}, 64), 2);
  EXPECT_THROW(find_even_power({I}, 2), NotFound);
  EXPECT_THROW(find_even_power({I}, 0), InvalidArgument);
}

TEST(CoveringExponents, KnownValues) {
  const auto one = covering_exponents(1, 64, 10000, 7);
  EXPECT_EQ(one.coverage, 1.0);
  EXPECT_EQ(one.samples, 10000u);

  const std::vector<std::vector<Complex>> pm{{1.0}, {-1.0}};
  const auto r = covering_exponents(std::span<const std::vector<Complex>>(pm), 64);
  EXPECT_EQ(r.exponents, std::vector<int>{2});
}

TEST(CoveringExponents, IncompleteCoverCarriesFailingSample) {
  const std::vector<std::vector<Complex>> tuples{{1.0}, {I}};
  try {
    covering_exponents(std::span<const std::vector<Complex>>(tuples), 2);
    FAIL() << "expected CoverageIncomplete";
  } catch (const CoverageIncomplete& e) {
    EXPECT_EQ(e.partial().covered, 1u);
    EXPECT_DOUBLE_EQ(e.partial().coverage, 0.5);
    ASSERT_EQ(e.failing_sample().size(), 1u);
    EXPECT_EQ(e.failing_sample()[0], I);
  }
}

// Properties.

TEST(RegionProperty, SectorRootInversionSymmetry) {
  testing::Rng rng(31);
  int checked = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const double c = testing::uniform(rng, 0.1, 5.0);
    const int p = testing::uniform_int(rng, 1, 4);
    const Complex z = testing::polar_in_annulus(rng, 0.1, 10.0);
    const auto x = Region::sector_root(c, p);
    // Skip samples near the boundary, where the tolerance band decides.
    const auto loose = Region::sector_root(c, p, 1e-6), strict = Region::sector_root(c, p, 0.0);
    if (loose.contains(z) != strict.contains(z)) continue;
    ++checked;
    EXPECT_EQ(x.contains(z), x.contains(1.0 / z)) << z;
  }
  EXPECT_GT(checked, 4500);
}

TEST(RegionProperty, CountsOfRegionAndComplementAddUp) {
  testing::Rng rng(32);
  const std::vector<Region> regions{Region::upper_half_plane(), Region::real_line(), Region::sector(1.0),
                                    Region::sector_root(2.0, 2), Region::disk(1.0), Region::nonnegative_ray()};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> roots;
    const int deg = testing::uniform_int(rng, 1, 10);
    for (int j = 0; j < deg; ++j) roots.push_back(testing::polar_in_annulus(rng, 0.2, 3.0));
    const auto rs = find_roots(from_roots(roots));
    for (const auto& x : regions) {
      bool ambiguous = false;
      for (const auto& r : rs.roots)
        ambiguous = ambiguous || x.with_tol(1e-6).contains(r.z) != x.with_tol(0.0).contains(r.z);
      if (ambiguous) continue;
      EXPECT_EQ(count_in(rs, x) + count_in(rs, x.complement()), deg);
    }
  }
}

TEST(RegionProperty, SectorsAreNested) {
  testing::Rng rng(33);
  for (int trial = 0; trial < 5000; ++trial) {
    const double c1 = testing::uniform(rng, 0.0, 4.0), c2 = c1 + testing::uniform(rng, 0.0, 4.0);
    const Complex z = testing::polar_in_annulus(rng, 0.0, 5.0);
    if (Region::sector(c1).contains(z)) {
      EXPECT_TRUE(Region::sector(c2).contains(z));
    }
  }
}

TEST(RegionProperty, OffAxisCountBelowOffRayCount) {
  testing::Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_real_coefficients(rng, testing::uniform_int(rng, 1, 10));
    const auto rs = find_roots(p);
    EXPECT_LE(count_in(rs, !Region::real_line()), count_in(rs, !Region::nonnegative_ray()));
  }
}

}  // namespace
}  // namespace polya
