#pragma once

// Closed regions of the complex plane, zero counting N(f; X) and the
// even-power search used to push finitely many points into Re z >= 0.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polya/errors.hpp"
#include "polya/polynomial.hpp"
#include "polya/rootfind.hpp"

namespace polya {

inline constexpr double kDefaultBoundaryTol = 1e-9;

/// Distance from z to the closed sector S_c = {|z| <= sqrt(1+c^2) Re z};
/// c = +inf is the closed right half plane.
inline double distance_to_sector(Complex z, double c) noexcept {
  if (std::isinf(c)) return std::max(0.0, -z.real());
  const double r = std::abs(z);
  if (r == 0.0) return 0.0;
  const double alpha = std::atan(c);
  const double excess = std::abs(std::arg(z)) - alpha;
  if (excess <= 0.0) return 0.0;
  if (excess >= std::numbers::pi / 2) return r;
  return r * std::sin(excess);
}

/// A closed region of C, or the complement of one.
///
/// Membership is decided with boundary tolerance: a point is in a closed
/// region when its distance to the region is at most tol * (1 + |z|). A
/// complement takes the negation of that test, so boundary points always
/// belong to the closed region and never to its complement.
class Region {
 public:
  enum class Kind {
    UpperHalfPlane,
    RealLine,
    ClosedRightHalfPlane,
    Sector,
    SectorRoot,
    Disk,
    NonNegativeRay,
    Complement
  };

  static Region upper_half_plane(double tol = kDefaultBoundaryTol) {
    return Region(Kind::UpperHalfPlane, tol);
  }
  static Region real_line(double tol = kDefaultBoundaryTol) { return Region(Kind::RealLine, tol); }
  static Region closed_right_half_plane(double tol = kDefaultBoundaryTol) {
    return Region(Kind::ClosedRightHalfPlane, tol);
  }
  static Region nonnegative_ray(double tol = kDefaultBoundaryTol) {
    return Region(Kind::NonNegativeRay, tol);
  }

  /// S_c. Sector(0) is the nonnegative ray and Sector(inf) the closed right half plane.
  static Region sector(double c, double tol = kDefaultBoundaryTol) {
    if (!(c >= 0)) throw InvalidArgument("sector parameter c must be >= 0");
    Region r(Kind::Sector, tol);
    r.c_ = c;
    return r;
  }

  /// S_c^{1/p} = {z : z^p in S_c}.
  static Region sector_root(double c, int p, double tol = kDefaultBoundaryTol) {
    if (!(c >= 0)) throw InvalidArgument("sector parameter c must be >= 0");
    if (p < 1) throw InvalidArgument("sector root exponent must be positive");
    Region r(Kind::SectorRoot, tol);
    r.c_ = c;
    r.p_ = p;
    return r;
  }

  /// |z| <= r, boundary relaxed like every other region.
  static Region disk(double radius, double tol = kDefaultBoundaryTol) {
    if (!(radius > 0)) throw InvalidArgument("disk radius must be positive");
    Region r(Kind::Disk, tol);
    r.c_ = radius;
    return r;
  }

  Region complement() const {
    Region r(Kind::Complement, tol_);
    r.inner_ = std::make_shared<const Region>(*this);
    return r;
  }

  friend Region operator!(const Region& r) { return r.complement(); }

  Kind kind() const noexcept { return kind_; }
  double tol() const noexcept { return tol_; }
  double parameter() const noexcept { return c_; }
  int exponent() const noexcept { return p_; }
  const Region* inner() const noexcept { return inner_.get(); }

  /// Copy with the boundary tolerance replaced (recursively through complements).
  Region with_tol(double tol) const {
    Region r = *this;
    r.tol_ = tol;
    if (inner_) r.inner_ = std::make_shared<const Region>(inner_->with_tol(tol));
    return r;
  }

  bool contains(Complex z) const {
    const double slack = tol_ * (1.0 + std::abs(z));
    switch (kind_) {
      case Kind::UpperHalfPlane: return z.imag() >= -slack;
      case Kind::RealLine: return std::abs(z.imag()) <= slack;
      case Kind::ClosedRightHalfPlane: return z.real() >= -slack;
      case Kind::NonNegativeRay: return distance_to_sector(z, 0.0) <= slack;
      case Kind::Sector: return distance_to_sector(z, c_) <= slack;
      case Kind::Disk: return std::abs(z) <= c_ + slack;
      case Kind::SectorRoot: {
        Complex w = 1.0;
        for (int k = 0; k < p_; ++k) w *= z;
        return distance_to_sector(w, c_) <= p_ * tol_ * (1.0 + std::abs(w));
      }
      case Kind::Complement: return !inner_->contains(z);
    }
    return false;
  }

  /// Inverse of parse(): "H", "R", "RHP", "S:c", "S:c^1/p", "D:r", "ray", "!X".
  std::string to_string() const {
    auto num = [](double v) {
      if (std::isinf(v)) return std::string("inf");
      char buf[32];
      auto res = std::to_chars(buf, buf + sizeof buf, v);
      return std::string(buf, res.ptr);
    };
    switch (kind_) {
      case Kind::UpperHalfPlane: return "H";
      case Kind::RealLine: return "R";
      case Kind::ClosedRightHalfPlane: return "RHP";
      case Kind::NonNegativeRay: return "ray";
      case Kind::Sector: return "S:" + num(c_);
      case Kind::SectorRoot: return "S:" + num(c_) + "^1/" + std::to_string(p_);
      case Kind::Disk: return "D:" + num(c_);
      case Kind::Complement: return "!" + inner_->to_string();
    }
    return {};
  }

  static Region parse(std::string_view spec, double tol = kDefaultBoundaryTol) {
    const std::string original(spec);
    auto fail = [&](const std::string& why) -> ParseError {
      return ParseError("bad region '" + original + "': " + why,
                        "region string offset " + std::to_string(original.size() - spec.size()));
    };
    auto number = [&](std::string_view s) {
      if (s == "inf" || s == "Inf" || s == "infinity") return std::numeric_limits<double>::infinity();
      double v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) throw fail("expected a number");
      return v;
    };
    if (spec.empty()) throw fail("empty region");
    if (spec.front() == '!') return parse(spec.substr(1), tol).complement();
    if (spec == "H") return upper_half_plane(tol);
    if (spec == "R") return real_line(tol);
    if (spec == "RHP") return closed_right_half_plane(tol);
    if (spec == "ray") return nonnegative_ray(tol);
    if (spec.starts_with("D:")) return disk(number(spec.substr(2)), tol);
    if (spec.starts_with("S:")) {
      auto body = spec.substr(2);
      const auto root = body.find("^1/");
      if (root == std::string_view::npos) return sector(number(body), tol);
      const double p = number(body.substr(root + 3));
      if (p != std::floor(p) || p < 1) throw fail("sector root exponent must be a positive integer");
      return sector_root(number(body.substr(0, root)), static_cast<int>(p), tol);
    }
    throw fail("unknown region");
  }

 private:
  Region(Kind k, double tol) : kind_(k), tol_(tol) {
    if (!(tol >= 0)) throw InvalidArgument("boundary tolerance must be >= 0");
  }

  Kind kind_;
  double tol_;
  double c_ = 0;
  int p_ = 1;
  std::shared_ptr<const Region> inner_;
};

inline bool region_contains(const Region& x, Complex z) { return x.contains(z); }

/// N(f; X) for already computed zeros.
inline int count_in(const RootSet& rs, const Region& x) {
  int n = 0;
  for (const auto& r : rs.roots)
    if (x.contains(r.z)) n += r.multiplicity;
  return n;
}

/// N(p; X). The zero polynomial and nonzero constants have no zeros.
/// Throws NoConvergence when the zeros could not be resolved to `opt.tol`.
inline int count_zeros(const Polynomial& p, const Region& x, const RootFindOptions& opt = {}) {
  if (p.degree() < 1) return 0;
  const auto rs = find_roots(p, opt);
  if (!rs.converged) throw NoConvergence("count_zeros: root finding did not converge");
  return count_in(rs, x);
}

/// N(p; X) with the region's boundary tolerance replaced by `boundary_tol`.
inline int count_zeros(const Polynomial& p, const Region& x, double boundary_tol) {
  return count_zeros(p, x.with_tol(boundary_tol));
}

namespace detail {

// z^q lies in Re >= 0 (with tolerance), computed on the unit circle.
inline bool power_in_right_half_plane(Complex z, int q, double tol) {
  if (z == Complex{}) return true;
  return std::cos(static_cast<double>(q) * std::arg(z)) >= -2.0 * tol;
}

inline void check_q_max(int q_max) {
  if (q_max < 2 || q_max % 2 != 0) throw InvalidArgument("q_max must be an even integer >= 2");
}

}  // namespace detail

/// Smallest even q <= q_max with z^q in the closed right half plane for every point.
inline int find_even_power(std::span<const Complex> points, int q_max = 256,
                           double tol = kDefaultBoundaryTol) {
  detail::check_q_max(q_max);
  for (int q = 2; q <= q_max; q += 2) {
    bool ok = true;
    for (const auto& z : points)
      if (!detail::power_in_right_half_plane(z, q, tol)) {
        ok = false;
        break;
      }
    if (ok) return q;
  }
  throw NotFound("no even exponent <= " + std::to_string(q_max) +
                 " maps every point into the closed right half plane");
}

inline int find_even_power(std::initializer_list<Complex> points, int q_max = 256,
                           double tol = kDefaultBoundaryTol) {
  return find_even_power(std::span<const Complex>(points.begin(), points.size()), q_max, tol);
}

struct CoverResult {
  std::vector<int> exponents;  // greedy order
  std::size_t samples = 0;
  std::size_t covered = 0;
  double coverage = 0;  // covered / samples
  int q_max = 0;
};

class CoverageIncomplete : public PreconditionError {
 public:
  CoverageIncomplete(CoverResult partial, std::vector<Complex> failing)
      : PreconditionError("some sample admits no even exponent <= q_max"),
        partial_(std::move(partial)),
        failing_(std::move(failing)) {}
  const CoverResult& partial() const noexcept { return partial_; }
  const std::vector<Complex>& failing_sample() const noexcept { return failing_; }

 private:
  CoverResult partial_;
  std::vector<Complex> failing_;
};

/// Greedy set Q of even exponents <= q_max such that every tuple has some
/// q in Q putting all of its q-th powers in Re z >= 0.
/// Throws CoverageIncomplete (carrying the partial cover) if a tuple admits none.
inline CoverResult covering_exponents(std::span<const std::vector<Complex>> tuples, int q_max,
                                      double tol = kDefaultBoundaryTol) {
  detail::check_q_max(q_max);
  const std::size_t nq = static_cast<std::size_t>(q_max / 2);
  std::vector<std::vector<char>> admits(tuples.size(), std::vector<char>(nq, 0));
  for (std::size_t s = 0; s < tuples.size(); ++s)
    for (std::size_t i = 0; i < nq; ++i) {
      const int q = 2 * static_cast<int>(i + 1);
      bool ok = true;
      for (const auto& z : tuples[s])
        if (!detail::power_in_right_half_plane(z, q, tol)) {
          ok = false;
          break;
        }
      admits[s][i] = ok;
    }

  CoverResult result;
  result.samples = tuples.size();
  result.q_max = q_max;
  std::vector<char> covered(tuples.size(), 0);
  while (true) {
    std::size_t best = nq, best_gain = 0;
    for (std::size_t i = 0; i < nq; ++i) {
      std::size_t gain = 0;
      for (std::size_t s = 0; s < tuples.size(); ++s) gain += !covered[s] && admits[s][i];
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == nq) break;
    result.exponents.push_back(2 * static_cast<int>(best + 1));
    for (std::size_t s = 0; s < tuples.size(); ++s)
      if (admits[s][best]) covered[s] = 1;
    result.covered += best_gain;
  }
  result.coverage = tuples.empty() ? 1.0 : static_cast<double>(result.covered) / tuples.size();
  for (std::size_t s = 0; s < tuples.size(); ++s)
    if (!covered[s]) throw CoverageIncomplete(result, tuples[s]);
  return result;
}

/// Randomized version: `trials` uniform points of the torus T^n, seeded.
inline CoverResult covering_exponents(int n, int q_max, std::size_t trials, std::uint64_t seed,
                                      double tol = kDefaultBoundaryTol) {
  if (n < 1) throw InvalidArgument("tuple size must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<std::vector<Complex>> tuples(trials);
  for (auto& t : tuples)
    for (int k = 0; k < n; ++k) t.push_back(std::polar(1.0, angle(rng)));
  return covering_exponents(tuples, q_max, tol);
}

}  // namespace polya
