#pragma once

// Weak (coefficientwise) and strong (sup-norm on circles) convergence
// diagnostics for polynomial sequences, the built-in fixture sequences, and
// harnesses that check theorem hypotheses before measuring strong decay.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polya/detail/parallel.hpp"
#include "polya/errors.hpp"
#include "polya/jensen.hpp"
#include "polya/polynomial.hpp"
#include "polya/powersums.hpp"
#include "polya/regions.hpp"
#include "polya/rootfind.hpp"

namespace polya {

/// Indexable family n -> f_n over the closed range [first, last].
class PolySequence {
 public:
  using Generator = std::function<Polynomial(int)>;

  PolySequence(std::string name, Generator gen, int first, int last)
      : name_(std::move(name)), gen_(std::move(gen)), first_(first), last_(last) {
    if (first > last) throw InvalidArgument("empty sequence range");
  }

  /// Members f_first, f_first+1, ... taken from a list.
  static PolySequence from_list(std::string name, std::vector<Polynomial> members, int first = 1) {
    if (members.empty()) throw InvalidArgument("sequence needs at least one member");
    const int last = first + static_cast<int>(members.size()) - 1;
    return PolySequence(
        std::move(name),
        [m = std::move(members), first](int n) { return m[static_cast<std::size_t>(n - first)]; },
        first, last);
  }

  const std::string& name() const noexcept { return name_; }
  int first() const noexcept { return first_; }
  int last() const noexcept { return last_; }
  bool contains(int n) const noexcept { return n >= first_ && n <= last_; }

  Polynomial operator()(int n) const {
    if (!contains(n))
      throw InvalidArgument("index " + std::to_string(n) + " outside sequence range [" +
                            std::to_string(first_) + ", " + std::to_string(last_) + "]");
    return gen_(n);
  }

 private:
  std::string name_;
  Generator gen_;
  int first_;
  int last_;
};

struct SequenceParams {
  std::uint64_t seed = 0;
  int degree = 6;  // fixed-factor degree of H-random and sector-random
  int k = 2;       // real-with-k-nonreal: number of non-real zeros (even)
  double c = 2.0;  // sector-random
  int p = 1;       // sector-random
};

inline constexpr int kBuiltinLastIndex = 4096;

inline const std::vector<std::string>& builtin_sequence_ids() {
  static const std::vector<std::string> ids{"jensen-of-exp", "jensen-of-cos", "binom",
                                            "monomial",      "H-random",      "real-with-k-nonreal",
                                            "sector-random"};
  return ids;
}

namespace detail {

// (1 + t z/n)^n, coefficients C(n,k) (t/n)^k by the ratio recurrence.
inline Polynomial scaled_binomial(int n, double t = 1.0) {
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  double v = 1.0;
  c[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    v *= t * static_cast<double>(n - k + 1) / (static_cast<double>(k) * n);
    c[static_cast<std::size_t>(k)] = v;
  }
  return Polynomial(std::move(c));
}

// prod (1 - z/a_j).
inline Polynomial unit_constant_product(const std::vector<Complex>& zeros) {
  Polynomial p = Polynomial::constant(1.0);
  for (Complex a : zeros) p = p * Polynomial{1.0, -1.0 / a};
  return p;
}

}  // namespace detail

/// Built-in fixtures. Members depend only on (id, params, n).
///   jensen-of-exp        f*_n of exp, i.e. (1 + z/n)^n
///   jensen-of-cos        f*_n of cos
///   binom                (1 + z/n)^n from binomial coefficients
///   monomial             z^n
///   H-random             P(z) (1 + t z/n)^n, P(0) = 1 with seeded zeros in
///                        [-2,2] x [0.1,2] and t in [0.5,1.5]
///   real-with-k-nonreal  (1 + z/n)^n prod_{j<k/2} (1 + z^2/(j+1)^2)
///   sector-random        P(z) (1 - t z/n)^n, P(0) = 1 with seeded zeros in
///                        S_c^{1/p} of modulus in [0.5,3] and t in [0.5,1.5]
inline PolySequence builtin_sequence(std::string_view id, const SequenceParams& params = {}) {
  const std::string name(id);
  if (id == "jensen-of-exp")
    return PolySequence(
        name, [](int n) { return jensen_sequence_member(exp_series(n), n); }, 1, kBuiltinLastIndex);
  if (id == "jensen-of-cos")
    return PolySequence(
        name, [](int n) { return jensen_sequence_member(cos_series(n), n); }, 1, kBuiltinLastIndex);
  if (id == "binom")
    return PolySequence(name, [](int n) { return detail::scaled_binomial(n); }, 1, kBuiltinLastIndex);
  if (id == "monomial")
    return PolySequence(name, [](int n) { return Polynomial::monomial(static_cast<std::size_t>(n)); }, 0,
                        kBuiltinLastIndex);

  if (id == "H-random") {
    if (params.degree < 0) throw InvalidArgument("degree must be nonnegative");
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.1, 2.0), scale(0.5, 1.5);
    std::vector<Complex> zeros;
    for (int j = 0; j < params.degree; ++j) {
      const double x = re(rng);
      zeros.emplace_back(x, im(rng));
    }
    const double t = scale(rng);
    const Polynomial fixed = detail::unit_constant_product(zeros);
    return PolySequence(
        name, [fixed, t](int n) { return fixed * detail::scaled_binomial(n, t); }, 1, kBuiltinLastIndex);
  }

  if (id == "real-with-k-nonreal") {
    if (params.k < 0 || params.k % 2 != 0) throw InvalidArgument("k must be a nonnegative even integer");
    Polynomial fixed = Polynomial::constant(1.0);
    for (int j = 0; j < params.k / 2; ++j) {
      const double s = j + 1.0;
      fixed = fixed * Polynomial{1.0, 0.0, 1.0 / (s * s)};
    }
    return PolySequence(
        name, [fixed](int n) { return fixed * detail::scaled_binomial(n); }, 1, kBuiltinLastIndex);
  }

  if (id == "sector-random") {
    if (params.degree < 0) throw InvalidArgument("degree must be nonnegative");
    if (!(params.c >= 0) || params.p < 1) throw InvalidArgument("sector-random needs c >= 0, p >= 1");
    const double half_angle = std::atan(params.c);
    const int p = params.p;
    // Zero with |z|^p = r^p and arg z^p drawn in [-atan c, atan c].
    auto draw = [half_angle, p](std::mt19937_64& rng, double r) {
      std::uniform_real_distribution<double> angle(-half_angle, half_angle);
      std::uniform_int_distribution<int> branch(0, p - 1);
      const double theta = angle(rng);
      const int m = branch(rng);
      return std::polar(r, (theta + 2.0 * std::numbers::pi * m) / p);
    };
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> radius(0.5, 3.0);
    std::vector<Complex> zeros;
    for (int j = 0; j < params.degree; ++j) {
      const double r = radius(rng);
      zeros.push_back(draw(rng, r));
    }
    const double t = std::uniform_real_distribution<double>(0.5, 1.5)(rng);
    const Polynomial fixed = detail::unit_constant_product(zeros);
    return PolySequence(
        name, [fixed, t](int n) { return fixed * detail::scaled_binomial(n, -t); }, 1, kBuiltinLastIndex);
  }
  throw UnknownGenerator(name);
}

/// Member-wise k-th derivative.
inline PolySequence derivative_sequence(const PolySequence& seq, int k) {
  return PolySequence(
      seq.name() + "'" + std::to_string(k), [seq, k](int n) { return derivative(seq(n), k); },
      seq.first(), seq.last());
}

/// Powers of two in [lo, hi].
inline std::vector<int> dyadic_indices(int lo, int hi) {
  std::vector<int> out;
  for (long long n = 1; n <= hi; n *= 2)
    if (n >= lo) out.push_back(static_cast<int>(n));
  return out;
}

/// (n, 2n) for consecutive entries of a dyadic window; consecutive pairs otherwise.
inline std::vector<std::pair<int, int>> consecutive_pairs(const std::vector<int>& window) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i + 1 < window.size(); ++i) out.emplace_back(window[i], window[i + 1]);
  return out;
}

struct StrongSample {
  double radius = 0;
  int n = 0;
  int m = 0;
  double sup = 0;
};

struct HypothesisCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct DecayRow {
  double radius = 0;
  std::vector<double> sups;    // one per pair, in pair order
  std::vector<double> ratios;  // sups[i+1] / sups[i]
  bool monotone = false;       // strictly decreasing sups
};

struct ConvergenceReport {
  std::string sequence;
  std::string theorem;  // empty when no harness ran
  std::vector<int> window;
  int k_max = 0;
  double eps = 1e-8;

  std::vector<double> osc;  // osc_0..osc_kmax
  std::vector<Complex> limit_coeffs;
  bool degenerate = false;

  std::vector<StrongSample> strong;
  std::vector<DecayRow> decay;

  std::vector<HypothesisCheck> hypotheses;
  bool conclusion_checked = false;
  bool conclusion_holds = false;

  bool hypotheses_hold() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(),
                       [](const HypothesisCheck& h) { return h.passed; });
  }
};

/// osc_k = max over window pairs of |a_k(f_n) - a_k(f_m)|; the limit estimate
/// averages a_k over the upper half of the window.
inline ConvergenceReport weak_convergence_probe(const PolySequence& seq, int k_max,
                                                std::vector<int> window, double eps = 1e-8) {
  if (k_max < 0) throw InvalidArgument("k_max must be nonnegative");
  if (window.empty()) throw InvalidArgument("probe window is empty");
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  for (int n : window) (void)seq(n);  // range check

  ConvergenceReport rep;
  rep.sequence = seq.name();
  rep.window = window;
  rep.k_max = k_max;
  rep.eps = eps;

  std::vector<std::vector<Complex>> coeffs(window.size());
  detail::parallel_for(window.size(), [&](std::size_t i) {
    const auto f = seq(window[i]);
    auto& row = coeffs[i];
    for (int k = 0; k <= k_max; ++k) row.push_back(f[static_cast<std::size_t>(k)]);
  });

  const std::size_t upper = window.size() / 2;
  for (int k = 0; k <= k_max; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    double osc = 0.0;
    for (std::size_t i = 0; i < window.size(); ++i)
      for (std::size_t j = i + 1; j < window.size(); ++j)
        osc = std::max(osc, std::abs(coeffs[i][kk] - coeffs[j][kk]));
    Complex sum = 0.0;
    for (std::size_t i = upper; i < window.size(); ++i) sum += coeffs[i][kk];
    rep.osc.push_back(osc);
    rep.limit_coeffs.push_back(sum / static_cast<double>(window.size() - upper));
  }
  rep.degenerate = std::all_of(rep.limit_coeffs.begin(), rep.limit_coeffs.end(),
                               [eps](Complex a) { return std::abs(a) <= eps; });
  return rep;
}

/// max of |f(z) - g(z)| over `samples` equispaced points of |z| = r.
inline double sup_norm_on_circle(const Polynomial& f, const Polynomial& g, double r, int samples) {
  const Polynomial d = f - g;
  double sup = 0.0;
  for (int j = 0; j < samples; ++j)
    sup = std::max(sup, std::abs(d(std::polar(r, 2.0 * std::numbers::pi * j / samples))));
  return sup;
}

inline std::vector<StrongSample> strong_convergence_probe(const PolySequence& seq,
                                                          const std::vector<double>& radii,
                                                          int samples,
                                                          const std::vector<std::pair<int, int>>& pairs) {
  if (samples < 64) throw InvalidArgument("strong probe needs at least 64 samples per circle");
  for (double r : radii)
    if (!(r > 0) || !std::isfinite(r)) throw InvalidArgument("radii must be positive and finite");
  for (const auto& [n, m] : pairs) {
    (void)seq(n);
    (void)seq(m);
  }
  std::vector<StrongSample> out(radii.size() * pairs.size());
  detail::parallel_for(pairs.size(), [&](std::size_t i) {
    const auto [n, m] = pairs[i];
    const auto fn = seq(n), fm = seq(m);
    for (std::size_t r = 0; r < radii.size(); ++r)
      out[r * pairs.size() + i] = {radii[r], n, m, sup_norm_on_circle(fn, fm, radii[r], samples)};
  });
  return out;
}

enum class Theorem { T1_1, T1_2, T2_3, T2_4 };

inline std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::T1_1: return "T1.1";
    case Theorem::T1_2: return "T1.2";
    case Theorem::T2_3: return "T2.3";
    case Theorem::T2_4: return "T2.4";
  }
  return {};
}

inline Theorem parse_theorem(std::string_view s) {
  if (s == "T1.1") return Theorem::T1_1;
  if (s == "T1.2") return Theorem::T1_2;
  if (s == "T2.3") return Theorem::T2_3;
  if (s == "T2.4") return Theorem::T2_4;
  throw InvalidArgument("unknown theorem '" + std::string(s) + "' (expected T1.1, T1.2, T2.3, T2.4)");
}

struct TheoremParams {
  std::vector<int> window = dyadic_indices(16, 128);
  int k_max = 8;
  double eps = 1e-8;
  std::vector<double> radii{1.0, 2.0};
  int samples = 512;
  int p = 1;                         // T2.3, T2.4
  std::optional<double> M;           // T2.3: bound on s~_p(f_n)
  std::optional<int> nonreal_bound;  // T1.2: bound on N(f_n; C \ R)
  double tol = kDefaultBoundaryTol;
  RootFindOptions roots;
};

// Hypothesis names used in reports.
inline constexpr std::string_view kHypZerosInH = "zeros in closed upper half-plane";
inline constexpr std::string_view kHypGaussLucas = "derivative zeros in closed upper half-plane";
inline constexpr std::string_view kHypNonzeroLimit = "nonzero limit coefficient";
inline constexpr std::string_view kHypRealCoeffs = "real coefficients";
inline constexpr std::string_view kHypBoundedNonreal = "bounded non-real zero count";
inline constexpr std::string_view kHypNonzeroConstants = "nonzero constant terms";
inline constexpr std::string_view kHypNonzeroLimitConstant = "nonzero limit constant term";
inline constexpr std::string_view kHypSumBound = "s_tilde_p bounded by M";
inline constexpr std::string_view kHypSectorRoot = "zeros in S_inf^(1/p)";

namespace detail {

inline std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Records the first member/zero outside `x`, scanning the window in order.
inline HypothesisCheck zeros_inside(std::string_view name, const std::vector<int>& window,
                                    const std::vector<RootSet>& zeros, const Region& x) {
  HypothesisCheck h{std::string(name), true, {}};
  for (std::size_t i = 0; i < window.size() && h.passed; ++i)
    for (const auto& r : zeros[i].roots)
      if (!x.contains(r.z)) {
        h.passed = false;
        h.witness = "n=" + std::to_string(window[i]) + " zero " + format_complex(r.z);
        break;
      }
  return h;
}

inline std::vector<RootSet> member_zeros(const std::vector<Polynomial>& members,
                                         const RootFindOptions& opt) {
  std::vector<RootSet> out(members.size());
  parallel_for(members.size(), [&](std::size_t i) {
    if (members[i].degree() < 1) {
      out[i].converged = true;
      return;
    }
    out[i] = find_roots(members[i], opt);
    if (!out[i].converged)
      throw NoConvergence("zeros of sequence member " + std::to_string(i) + " did not converge");
  });
  return out;
}

inline std::vector<DecayRow> decay_rows(const std::vector<StrongSample>& strong,
                                        const std::vector<double>& radii) {
  std::vector<DecayRow> rows;
  for (double r : radii) {
    DecayRow row;
    row.radius = r;
    for (const auto& s : strong)
      if (s.radius == r) row.sups.push_back(s.sup);
    for (std::size_t i = 1; i < row.sups.size(); ++i)
      row.ratios.push_back(row.sups[i - 1] > 0 ? row.sups[i] / row.sups[i - 1]
                                               : std::numeric_limits<double>::infinity());
    row.monotone = row.sups.size() >= 2;
    for (std::size_t i = 1; i < row.sups.size(); ++i)
      row.monotone = row.monotone && row.sups[i] < row.sups[i - 1];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// Checks the hypotheses of `theorem` on every window member and, when all
/// pass, measures sup-norm Cauchy decay over consecutive window pairs. The
/// conclusion holds when the sups decrease strictly on every radius.
inline ConvergenceReport validate_theorem(const PolySequence& seq, Theorem theorem,
                                          const TheoremParams& params = {}) {
  if (theorem == Theorem::T2_3 && !params.M) throw InvalidArgument("T2.3 needs the bound M");
  if (theorem == Theorem::T1_2 && !params.nonreal_bound)
    throw InvalidArgument("T1.2 needs a bound on the non-real zero count");
  if ((theorem == Theorem::T2_3 || theorem == Theorem::T2_4) && params.p < 1)
    throw InvalidArgument("p must be positive");

  auto rep = weak_convergence_probe(seq, params.k_max, params.window, params.eps);
  rep.theorem = to_string(theorem);
  const auto& window = rep.window;

  std::vector<Polynomial> members;
  for (int n : window) members.push_back(seq(n));
  const auto zeros = detail::member_zeros(members, params.roots);

  auto nonzero_limit = [&] {
    HypothesisCheck h{std::string(kHypNonzeroLimit), !rep.degenerate, {}};
    double biggest = 0.0;
    for (Complex a : rep.limit_coeffs) biggest = std::max(biggest, std::abs(a));
    std::ostringstream os;
    os << "max |limit coefficient| = " << biggest << " (k <= " << rep.k_max << ", eps " << rep.eps << ")";
    if (!h.passed) h.witness = os.str();
    return h;
  };
  auto nonzero_limit_constant = [&] {
    HypothesisCheck h{std::string(kHypNonzeroLimitConstant), std::abs(rep.limit_coeffs[0]) > rep.eps, {}};
    if (!h.passed) h.witness = "limit f(0) ~ " + detail::format_complex(rep.limit_coeffs[0]);
    return h;
  };

  switch (theorem) {
    case Theorem::T1_1: {
      const auto upper = Region::upper_half_plane(params.tol);
      rep.hypotheses.push_back(detail::zeros_inside(kHypZerosInH, window, zeros, upper));
      std::vector<Polynomial> derivs;
      for (const auto& f : members) derivs.push_back(derivative(f, 1));
      rep.hypotheses.push_back(detail::zeros_inside(kHypGaussLucas, window,
                                                    detail::member_zeros(derivs, params.roots), upper));
      rep.hypotheses.push_back(nonzero_limit());
      break;
    }
    case Theorem::T1_2: {
      HypothesisCheck real{std::string(kHypRealCoeffs), true, {}};
      HypothesisCheck bounded{std::string(kHypBoundedNonreal), true, {}};
      const auto off_axis = Region::real_line(params.tol).complement();
      for (std::size_t i = 0; i < window.size(); ++i) {
        if (real.passed && !members[i].is_real()) {
          real.passed = false;
          real.witness = "n=" + std::to_string(window[i]);
        }
        const int count = count_in(zeros[i], off_axis);
        if (bounded.passed && count > *params.nonreal_bound) {
          bounded.passed = false;
          bounded.witness = "n=" + std::to_string(window[i]) + " has " + std::to_string(count) +
                            " non-real zeros";
        }
      }
      rep.hypotheses.push_back(real);
      rep.hypotheses.push_back(bounded);
      rep.hypotheses.push_back(nonzero_limit());
      break;
    }
    case Theorem::T2_3: {
      HypothesisCheck constants{std::string(kHypNonzeroConstants), true, {}};
      HypothesisCheck bound{std::string(kHypSumBound), true, {}};
      for (std::size_t i = 0; i < window.size(); ++i) {
        if (members[i][0] == Complex{}) {
          if (constants.passed) constants.witness = "n=" + std::to_string(window[i]);
          constants.passed = false;
          continue;
        }
        if (zeros[i].roots.empty()) continue;
        const double st = power_sums_from_roots(zeros[i], params.p).s_tilde_at(params.p);
        if (bound.passed && st > *params.M) {
          bound.passed = false;
          std::ostringstream os;
          os << "n=" << window[i] << " has s_tilde_" << params.p << " = " << st << " > " << *params.M;
          bound.witness = os.str();
        }
      }
      rep.hypotheses.push_back(constants);
      rep.hypotheses.push_back(nonzero_limit_constant());
      rep.hypotheses.push_back(bound);
      break;
    }
    case Theorem::T2_4: {
      const auto sector = Region::sector_root(std::numeric_limits<double>::infinity(), params.p, params.tol);
      rep.hypotheses.push_back(nonzero_limit_constant());
      rep.hypotheses.push_back(detail::zeros_inside(kHypSectorRoot, window, zeros, sector));
      break;
    }
  }

  if (!rep.hypotheses_hold()) return rep;
  rep.strong = strong_convergence_probe(seq, params.radii, params.samples, consecutive_pairs(window));
  rep.decay = detail::decay_rows(rep.strong, params.radii);
  rep.conclusion_checked = true;
  rep.conclusion_holds = !rep.decay.empty() && std::all_of(rep.decay.begin(), rep.decay.end(),
                                                           [](const DecayRow& d) { return d.monotone; });
  return rep;
}

/// Throws HypothesisViolated for the first failed hypothesis of a report.
inline void require_hypotheses(const ConvergenceReport& rep) {
  for (const auto& h : rep.hypotheses)
    if (!h.passed) throw HypothesisViolated(h.name, h.witness);
}

}  // namespace polya
