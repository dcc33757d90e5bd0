#pragma once

// Complex polynomials and truncated power series.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "polya/errors.hpp"

namespace polya {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace detail {

inline void require_finite(std::span<const Complex> coeffs) {
  for (const auto& c : coeffs)
    if (!is_finite(c)) throw InvalidArgument("non-finite coefficient");
}

}  // namespace detail

/// Dense polynomial with complex coefficients in ascending order.
///
/// The empty coefficient list is the zero polynomial; otherwise the leading
/// coefficient is nonzero. Only exact zeros are trimmed from the top, so
/// polynomials whose high coefficients are tiny but meaningful (Jensen
/// sequences, (1 + z/n)^n) keep their full degree.
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    detail::require_finite(coeffs_);
    trim();
  }

  Polynomial(std::initializer_list<Complex> coeffs)
      : Polynomial(std::vector<Complex>(coeffs)) {}

  static Polynomial constant(Complex c) { return Polynomial(std::vector<Complex>{c}); }

  static Polynomial monomial(std::size_t degree, Complex c = 1.0) {
    std::vector<Complex> v(degree + 1, 0.0);
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  Complex operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : Complex{};
  }

  Complex leading() const noexcept { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

  Complex operator()(Complex z) const noexcept {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  bool is_real() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Complex& c) { return c.imag() == 0.0; });
  }

  double max_abs_coeff() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  double l1_norm() const noexcept {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::abs(c);
    return s;
  }

  /// Drops trailing coefficients below `rel * max|coeff|`.
  Polynomial trimmed(double rel) const {
    auto v = coeffs_;
    const double cut = rel * max_abs_coeff();
    while (!v.empty() && std::abs(v.back()) <= cut) v.pop_back();
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] - b[k];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(Complex s, const Polynomial& p) {
    auto v = p.coeffs_;
    for (auto& c : v) c *= s;
    return Polynomial(std::move(v));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
  }

  std::vector<Complex> coeffs_;
};

/// Truncated Maclaurin series a_0 + a_1 z + ... + a_K z^K.
/// Coefficients are stored as given; nothing is trimmed or normalized.
class PowerSeries {
 public:
  PowerSeries() = default;

  explicit PowerSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    detail::require_finite(coeffs_);
  }

  PowerSeries(std::initializer_list<Complex> coeffs)
      : PowerSeries(std::vector<Complex>(coeffs)) {}

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

  /// K; -1 for an empty series.
  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  /// a_k, or 0 beyond the truncation order.
  Complex operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : Complex{};
  }

  bool is_real() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Complex& c) { return c.imag() == 0.0; });
  }

  Polynomial truncation() const { return Polynomial(coeffs_); }

  /// Cauchy product truncated to the smaller of the two orders.
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const int order = std::min(a.order(), b.order());
    if (order < 0) return {};
    std::vector<Complex> v(static_cast<std::size_t>(order) + 1, 0.0);
    for (int k = 0; k <= order; ++k)
      for (int j = 0; j <= k; ++j) v[k] += a[j] * b[k - j];
    return PowerSeries(std::move(v));
  }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<Complex> coeffs_;
};

inline PowerSeries to_series(const Polynomial& p, int order) {
  std::vector<Complex> v(static_cast<std::size_t>(std::max(order, -1) + 1), 0.0);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k];
  return PowerSeries(std::move(v));
}

/// Maclaurin series of e^z: a_k = 1/k!.
inline PowerSeries exp_series(int order) {
  std::vector<Complex> v;
  double a = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) a /= k;
    v.emplace_back(a);
  }
  return PowerSeries(std::move(v));
}

/// Maclaurin series of cos z.
inline PowerSeries cos_series(int order) {
  std::vector<Complex> v;
  double a = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) a /= k;
    v.emplace_back(k % 2 ? 0.0 : ((k / 2) % 2 ? -a : a));
  }
  return PowerSeries(std::move(v));
}

inline Complex evaluate(const Polynomial& p, Complex z) noexcept { return p(z); }

/// k-th formal derivative.
inline Polynomial derivative(const Polynomial& p, int k = 1) {
  if (k < 0) throw InvalidArgument("derivative order must be nonnegative");
  if (k > p.degree()) return {};
  std::vector<Complex> v(p.coeffs().size() - static_cast<std::size_t>(k));
  for (std::size_t j = 0; j < v.size(); ++j) {
    double falling = 1.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i)
      falling *= static_cast<double>(j + static_cast<std::size_t>(k) - i);
    v[j] = falling * p[j + static_cast<std::size_t>(k)];
  }
  return Polynomial(std::move(v));
}

/// q(z) = p(z + t), via repeated synthetic division.
inline Polynomial shift_argument(const Polynomial& p, Complex t) {
  auto c = p.coeffs();
  const std::size_t n = c.size();
  if (n < 2 || t == Complex{}) return p;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) c[j] += t * c[j + 1];
  return Polynomial(std::move(c));
}

/// q(z) = p(lambda z).
inline Polynomial scale_argument(const Polynomial& p, Complex lambda) {
  if (lambda == Complex{}) return p.is_zero() ? p : Polynomial::constant(p[0]);
  auto c = p.coeffs();
  Complex power = 1.0;
  for (auto& a : c) {
    a *= power;
    power *= lambda;
  }
  return Polynomial(std::move(c));
}

/// leading * prod (z - r).
inline Polynomial from_roots(std::span<const Complex> roots, Complex leading = 1.0) {
  if (leading == Complex{}) throw InvalidArgument("from_roots: leading coefficient is zero");
  detail::require_finite(roots);
  std::vector<Complex> c{leading};
  c.reserve(roots.size() + 1);
  for (const auto& r : roots) {
    c.push_back(0.0);
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] = c[j - 1] - r * c[j];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

inline Polynomial from_roots(std::initializer_list<Complex> roots, Complex leading = 1.0) {
  return from_roots(std::span<const Complex>(roots.begin(), roots.size()), leading);
}

/// Maclaurin coefficients of p'/p up to z^order, by series long division.
inline PowerSeries log_derivative_series(const Polynomial& p, int order) {
  if (order < 0) throw InvalidArgument("series order must be nonnegative");
  const Complex p0 = p[0];
  if (std::abs(p0) == 0.0) throw ConstantTermZero();
  std::vector<Complex> q(static_cast<std::size_t>(order) + 1, 0.0);
  for (std::size_t k = 0; k < q.size(); ++k) {
    Complex acc = static_cast<double>(k + 1) * p[k + 1];
    for (std::size_t j = 1; j <= k && j <= static_cast<std::size_t>(p.degree()); ++j)
      acc -= p[j] * q[k - j];
    q[k] = acc / p0;
  }
  return PowerSeries(std::move(q));
}

}  // namespace polya
