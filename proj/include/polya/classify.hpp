#pragma once

// Class-membership tests for a truncated power series, read off the zeros of
// its Jensen and Appell polynomials up to a finite depth. A truncated series
// can only be *consistent* with a class up to n_max; nothing here proves
// membership.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polya/detail/parallel.hpp"
#include "polya/errors.hpp"
#include "polya/jensen.hpp"
#include "polya/polynomial.hpp"
#include "polya/regions.hpp"
#include "polya/rootfind.hpp"

namespace polya {

enum class MembershipClass { PO, LP, LPstar, LPS0star };
enum class Verdict { consistent, violated };

inline std::string to_string(MembershipClass c) {
  switch (c) {
    case MembershipClass::PO: return "po";
    case MembershipClass::LP: return "lp";
    case MembershipClass::LPstar: return "lp*";
    case MembershipClass::LPS0star: return "lps0*";
  }
  return {};
}

inline MembershipClass parse_membership_class(std::string_view s) {
  if (s == "po" || s == "PO") return MembershipClass::PO;
  if (s == "lp" || s == "LP") return MembershipClass::LP;
  if (s == "lp*" || s == "LPstar" || s == "lpstar") return MembershipClass::LPstar;
  if (s == "lps0*" || s == "LPS0star" || s == "lps0star") return MembershipClass::LPS0star;
  throw InvalidArgument("unknown class '" + std::string(s) + "' (expected po, lp, lp*, lps0*)");
}

inline std::string to_string(Verdict v) { return v == Verdict::consistent ? "consistent" : "violated"; }

struct Violation {
  int n = 0;
  Complex witness;
};

struct ClassVerdict {
  MembershipClass class_id = MembershipClass::PO;
  int n_max = 0;
  Verdict verdict = Verdict::consistent;
  /// PO/LP: zeros of J(f,n) outside the target set. LP*/LP(S0)*: N_n.
  std::vector<int> counts;
  std::optional<int> stabilized_at;
  std::optional<int> stabilized_value;
  std::vector<Violation> violations;
  double tol = kDefaultBoundaryTol;
  int plateau = 5;
};

struct MembershipOptions {
  double tol = kDefaultBoundaryTol;  // boundary tolerance of the regions
  int plateau = 5;                   // tail run length that counts as stabilized
  RootFindOptions roots;
};

namespace detail {

inline bool needs_real_coefficients(const Region& x) {
  if (x.kind() != Region::Kind::Complement) return false;
  const auto* in = x.inner();
  return in->kind() == Region::Kind::RealLine || in->kind() == Region::Kind::NonNegativeRay ||
         (in->kind() == Region::Kind::Sector && in->parameter() == 0.0);
}

// Zeros of each polynomial, computed independently per index.
inline std::vector<RootSet> zeros_of_each(const std::vector<Polynomial>& polys,
                                          const RootFindOptions& opt) {
  std::vector<RootSet> out(polys.size());
  parallel_for(polys.size(), [&](std::size_t i) {
    if (polys[i].degree() < 1) {
      out[i].converged = true;
      return;
    }
    out[i] = find_roots(polys[i], opt);
    if (!out[i].converged)
      throw NoConvergence("zeros of polynomial " + std::to_string(i) + " did not converge");
  });
  return out;
}

inline std::optional<Complex> first_outside(const RootSet& rs, const Region& x) {
  for (const auto& r : rs.roots)
    if (!x.contains(r.z)) return r.z;
  return std::nullopt;
}

inline void detect_plateau(ClassVerdict& v) {
  if (v.counts.empty()) return;
  std::size_t start = v.counts.size() - 1;
  while (start > 0 && v.counts[start - 1] == v.counts.back()) --start;
  if (static_cast<int>(v.counts.size() - start) >= v.plateau) {
    v.stabilized_at = static_cast<int>(start);
    v.stabilized_value = v.counts.back();
  }
}

}  // namespace detail

/// N_n = N(A(f,n); X) for n = 0..n_max; an identically zero A(f,n) counts 0.
inline std::vector<int> jensen_zero_counts(const PowerSeries& f, int n_max, const Region& x,
                                           const RootFindOptions& opt = {}) {
  if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
  if (detail::needs_real_coefficients(x) && !f.is_real()) throw NonRealCoefficients();
  std::vector<Polynomial> polys;
  for (int n = 0; n <= n_max; ++n) polys.push_back(appell(f, n));
  const auto zeros = detail::zeros_of_each(polys, opt);
  std::vector<int> counts;
  for (const auto& rs : zeros) counts.push_back(count_in(rs, x));
  return counts;
}

inline ClassVerdict check_membership(const PowerSeries& f, MembershipClass cls, int n_max,
                                     const MembershipOptions& opt = {}) {
  if (n_max < 2) throw InvalidArgument("n_max must be >= 2");
  if (cls != MembershipClass::PO && !f.is_real()) throw NonRealCoefficients();

  ClassVerdict v;
  v.class_id = cls;
  v.n_max = n_max;
  v.tol = opt.tol;
  v.plateau = opt.plateau;

  std::vector<Polynomial> polys;
  const bool use_jensen = cls == MembershipClass::PO || cls == MembershipClass::LP;
  for (int n = 0; n <= n_max; ++n) polys.push_back(use_jensen ? jensen(f, n) : appell(f, n));
  const auto zeros = detail::zeros_of_each(polys, opt.roots);

  switch (cls) {
    case MembershipClass::PO:
    case MembershipClass::LP: {
      const auto target = cls == MembershipClass::PO ? Region::upper_half_plane(opt.tol)
                                                     : Region::real_line(opt.tol);
      for (int n = 0; n <= n_max; ++n) {
        const auto& rs = zeros[static_cast<std::size_t>(n)];
        v.counts.push_back(count_in(rs, target.complement()));
        if (auto w = detail::first_outside(rs, target)) v.violations.push_back({n, *w});
      }
      break;
    }
    case MembershipClass::LPstar:
    case MembershipClass::LPS0star: {
      const auto base = cls == MembershipClass::LPstar ? Region::real_line(opt.tol)
                                                       : Region::nonnegative_ray(opt.tol);
      const auto off = base.complement();
      for (const auto& rs : zeros) v.counts.push_back(count_in(rs, off));
      // LP*: 0 = N_0 = N_1 <= N_2 <= ...; LP(S0)*: 0 = N_0 <= N_1 <= ...
      const int pinned = cls == MembershipClass::LPstar ? 1 : 0;
      for (int n = 0; n <= n_max; ++n) {
        const auto& rs = zeros[static_cast<std::size_t>(n)];
        const int count = v.counts[static_cast<std::size_t>(n)];
        if (n <= pinned && count != 0) {
          v.violations.push_back({n, detail::first_outside(rs, base).value_or(Complex{})});
        } else if (n > 0 && !polys[static_cast<std::size_t>(n)].is_zero() &&
                   count < v.counts[static_cast<std::size_t>(n - 1)]) {
          const auto& prev = zeros[static_cast<std::size_t>(n - 1)];
          v.violations.push_back({n, detail::first_outside(prev, base).value_or(Complex{})});
        }
      }
      break;
    }
  }
  detail::detect_plateau(v);
  v.verdict = v.violations.empty() ? Verdict::consistent : Verdict::violated;
  return v;
}

}  // namespace polya
