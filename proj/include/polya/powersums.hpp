#pragma once

// Newton power sums s_k(f; X) = sum a_j^{-k} and absolute sums
// s~_k(f; X) = sum |a_j|^{-k} over the zeros a_j of f lying in X, plus the
// growth-bound machinery built on them.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "polya/errors.hpp"
#include "polya/polynomial.hpp"
#include "polya/regions.hpp"
#include "polya/rootfind.hpp"

namespace polya {

enum class SumSource { coefficients, roots };

struct SumTable {
  std::vector<Complex> s;        // s_1..s_K
  std::vector<double> s_tilde;   // s~_1..s~_K; empty for the coefficient route
  SumSource source = SumSource::coefficients;
  std::optional<Region> region;  // nullopt: all of C

  Complex s_at(int k) const { return s.at(static_cast<std::size_t>(k - 1)); }
  double s_tilde_at(int k) const { return s_tilde.at(static_cast<std::size_t>(k - 1)); }
};

/// s_k = -q_{k-1}, where q is the Maclaurin series of p'/p.
inline SumTable power_sums_from_coeffs(const Polynomial& p, int k_max) {
  if (k_max < 1) throw InvalidArgument("K must be positive");
  const auto q = log_derivative_series(p, k_max - 1);
  SumTable t;
  t.source = SumSource::coefficients;
  for (int k = 1; k <= k_max; ++k) t.s.push_back(-q[static_cast<std::size_t>(k - 1)]);
  return t;
}

/// Region-restricted sums over computed zeros, counted with multiplicity.
/// Zeros within 1e-9 * max(1, max|z|) of the origin are rejected.
inline SumTable power_sums_from_roots(const RootSet& rs, int k_max,
                                      const std::optional<Region>& region = std::nullopt) {
  if (k_max < 1) throw InvalidArgument("K must be positive");
  double scale = 1.0;
  for (const auto& r : rs.roots) scale = std::max(scale, std::abs(r.z));
  for (const auto& r : rs.roots)
    if (std::abs(r.z) <= 1e-9 * scale) throw RootAtOrigin();

  SumTable t;
  t.source = SumSource::roots;
  t.region = region;
  t.s.assign(static_cast<std::size_t>(k_max), 0.0);
  t.s_tilde.assign(static_cast<std::size_t>(k_max), 0.0);
  for (const auto& r : rs.roots) {
    if (region && !region->contains(r.z)) continue;
    const Complex inv = 1.0 / r.z;
    const double ainv = 1.0 / std::abs(r.z);
    const double m = r.multiplicity;
    Complex pw = 1.0;
    double apw = 1.0;
    for (std::size_t k = 0; k < t.s.size(); ++k) {
      pw *= inv;
      apw *= ainv;
      t.s[k] += m * pw;
      t.s_tilde[k] += m * apw;
    }
  }
  return t;
}

/// Sampling grid for the c_p estimator: log-spaced radii in [r_min, r_max],
/// equispaced angles. refined() doubles the resolution and contains every
/// point of the coarser grid.
struct FactorGrid {
  int radial = 301;
  int angular = 720;
  double r_min = 1e-3;
  double r_max = 1e3;
  double exclusion = 1e-6;  // skip |z - 1| < exclusion

  FactorGrid refined() const {
    FactorGrid g = *this;
    g.radial = 2 * radial - 1;
    g.angular = 2 * angular;
    return g;
  }
};

struct FactorEstimate {
  int p = 0;
  double value = 0;  // sup of the sampled supremand
  Complex argmax;
  FactorGrid grid;
};

namespace detail {

// log|1 - z| + Re sum_{k<p} z^k / k, the exponent deficit of one factor.
inline double factor_deficit(Complex z, int p) {
  Complex partial = 0.0, pw = 1.0;
  for (int k = 1; k < p; ++k) {
    pw *= z;
    partial += pw / static_cast<double>(k);
  }
  return std::log(std::abs(1.0 - z)) + partial.real();
}

}  // namespace detail

/// Estimates the smallest c_p with |1-z| <= exp(-Re sum_{k<p} z^k/k + c_p |z|^p)
/// as the largest sampled value of the deficit divided by |z|^p.
inline FactorEstimate estimate_factor_constant(int p, const FactorGrid& grid = {}) {
  if (p < 2) throw InvalidArgument("factor constant needs p >= 2");
  if (grid.radial < 2 || grid.angular < 1 || !(grid.r_min > 0) || !(grid.r_max > grid.r_min))
    throw InvalidArgument("bad sampling grid");
  FactorEstimate est{p, -std::numeric_limits<double>::infinity(), 0.0, grid};
  const double log_ratio = std::log(grid.r_max / grid.r_min);
  for (int i = 0; i < grid.radial; ++i) {
    const double r = grid.r_min * std::exp(log_ratio * i / (grid.radial - 1));
    const double rp = std::pow(r, p);
    for (int j = 0; j < grid.angular; ++j) {
      const Complex z = std::polar(r, 2.0 * std::numbers::pi * j / grid.angular);
      if (std::abs(z - 1.0) < grid.exclusion) continue;
      const double v = detail::factor_deficit(z, p) / rp;
      if (v > est.value) {
        est.value = v;
        est.argmax = z;
      }
    }
  }
  return est;
}

struct GrowthReport {
  int p = 0;
  double c_p = 0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();  // bound exponent - log|p(z)|
  double max_margin = -std::numeric_limits<double>::infinity();
  std::vector<Complex> witnesses;  // first few violating points
};

/// Checks |p(z)| <= exp(-Re sum_{k<p} s_k z^k / k + c_p s~_p |z|^p) at random
/// points of |z| <= radius (for p = 1: |p(z)| <= exp(s~_1 |z|)).
/// Requires p(0) = 1; the comparison is done on logarithms with relative slack 1e-9.
inline GrowthReport check_growth_bound(const Polynomial& poly, int p, double c_p,
                                       std::size_t samples, std::uint64_t seed,
                                       double radius = 10.0) {
  if (p < 1) throw InvalidArgument("p must be positive");
  if (std::abs(poly[0] - 1.0) > 1e-12) throw NormalizationError();
  GrowthReport rep;
  rep.p = p;
  rep.c_p = c_p;
  rep.samples = samples;

  std::vector<Complex> s;
  double s_tilde_p = 0.0;
  if (poly.degree() >= 1) {
    s = power_sums_from_coeffs(poly, p).s;
    s_tilde_p = power_sums_from_roots(find_roots(poly), p).s_tilde_at(p);
  } else {
    s.assign(static_cast<std::size_t>(p), 0.0);
  }
  const double c = p == 1 ? 1.0 : c_p;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < samples; ++i) {
    // i = 0 probes the origin, where the bound holds with equality.
    const Complex z = i == 0 ? Complex{}
                             : std::polar(radius * std::sqrt(unit(rng)),
                                          2.0 * std::numbers::pi * unit(rng));
    Complex partial = 0.0, pw = 1.0;
    for (int k = 1; k < p; ++k) {
      pw *= z;
      partial += s[static_cast<std::size_t>(k - 1)] * pw / static_cast<double>(k);
    }
    const double exponent = -partial.real() + c * s_tilde_p * std::pow(std::abs(z), p);
    const double lhs = std::log(std::abs(poly(z)));
    const double margin = exponent - lhs;
    rep.min_margin = std::min(rep.min_margin, margin);
    rep.max_margin = std::max(rep.max_margin, margin);
    if (margin < -1e-9 * (1.0 + std::abs(exponent))) {
      ++rep.violations;
      if (rep.witnesses.size() < 8) rep.witnesses.push_back(z);
    }
  }
  return rep;
}

struct SectorInequalityReport {
  double c = 0;
  double c1 = 0;  // 2c / (c^2 - 1)
  int p = 0;
  int g_count = 0;  // zeros in S_c^{1/p}
  int h_count = 0;  // zeros in S_inf^{1/p} \ S_c^{1/p}
  double g_lhs = 0, g_rhs = 0;  // s~_p(g) <= sqrt(1+c^2) Re s_p(g)
  double h_lhs = 0, h_mid = 0, h_rhs = 0;  // s~_2p(h) <= -sqrt(1+c1^2) Re s_2p(h) <= sqrt(1+c1^2)|s_2p(h)|
  double g_slack = 0, h_slack = 0;
  bool holds = false;
};

/// Splits the zeros into the S_c^{1/p} part g and the remainder h and
/// evaluates the two sector inequalities on them.
inline SectorInequalityReport sector_sum_inequalities(const RootSet& rs, double c, int p,
                                                      double tol = kDefaultBoundaryTol) {
  if (!(c > 1)) throw InvalidArgument("sector inequalities need c > 1");
  if (p < 1) throw InvalidArgument("p must be positive");
  const auto outer = Region::sector_root(std::numeric_limits<double>::infinity(), p, tol);
  const auto inner = Region::sector_root(c, p, tol);
  for (const auto& r : rs.roots)
    if (!outer.contains(r.z))
      throw RootsOutsideSector("zero " + std::to_string(r.z.real()) + (r.z.imag() < 0 ? "" : "+") +
                               std::to_string(r.z.imag()) + "i lies outside S_inf^(1/" +
                               std::to_string(p) + ")");

  SectorInequalityReport rep;
  rep.c = c;
  rep.p = p;
  rep.c1 = 2.0 * c / (c * c - 1.0);
  const auto g = power_sums_from_roots(rs, 2 * p, inner);
  const auto h = power_sums_from_roots(rs, 2 * p, inner.complement());
  for (const auto& r : rs.roots) (inner.contains(r.z) ? rep.g_count : rep.h_count) += r.multiplicity;

  const double kc = std::sqrt(1.0 + c * c);
  const double kc1 = std::sqrt(1.0 + rep.c1 * rep.c1);
  rep.g_lhs = g.s_tilde_at(p);
  rep.g_rhs = kc * g.s_at(p).real();
  rep.h_lhs = h.s_tilde_at(2 * p);
  rep.h_mid = -kc1 * h.s_at(2 * p).real();
  rep.h_rhs = kc1 * std::abs(h.s_at(2 * p));
  rep.g_slack = rep.g_rhs - rep.g_lhs;
  rep.h_slack = rep.h_rhs - rep.h_lhs;
  const double slack_g = 1e-9 * (1.0 + rep.g_lhs);
  const double slack_h = 1e-9 * (1.0 + rep.h_lhs);
  rep.holds = rep.g_slack >= -slack_g && rep.h_mid - rep.h_lhs >= -slack_h &&
              rep.h_rhs - rep.h_mid >= -slack_h;
  return rep;
}

}  // namespace polya
