#pragma once

// Appell and Jensen polynomials of a power series, the Jensen sequence and
// the Hermite-Poulain operator h -> h' - b h.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "polya/errors.hpp"
#include "polya/polynomial.hpp"

namespace polya {

/// n!/(n-k)! as the product (n-k+1) * ... * n in double precision.
inline double falling_factorial(int n, int k) {
  double f = 1.0;
  for (int j = n - k + 1; j <= n; ++j) f *= j;
  return f;
}

namespace detail {

// b_k = n!/(n-k)! a_k for k = 0..n. Absent a_k (beyond the truncation order)
// are zero; a nonzero a_k whose weight leaves double range is an error.
inline std::vector<Complex> jensen_weights(const PowerSeries& f, int n) {
  if (n < 0) throw InvalidArgument("polynomial index n must be nonnegative");
  std::vector<Complex> b(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    const Complex a = f[static_cast<std::size_t>(k)];
    if (a == Complex{}) continue;
    const double w = falling_factorial(n, k);
    const Complex v = w * a;
    if (!std::isfinite(w) || !is_finite(v))
      throw Overflow("falling factorial " + std::to_string(n) + "!/(" + std::to_string(n - k) +
                     ")! times a_" + std::to_string(k) + " exceeds double range");
    b[static_cast<std::size_t>(k)] = v;
  }
  return b;
}

}  // namespace detail

/// A(f,n)(z) = sum_k n!/(n-k)! a_k z^(n-k).
inline Polynomial appell(const PowerSeries& f, int n) {
  auto b = detail::jensen_weights(f, n);
  std::reverse(b.begin(), b.end());
  return Polynomial(std::move(b));
}

/// J(f,n)(z) = sum_k n!/(n-k)! a_k z^k.
inline Polynomial jensen(const PowerSeries& f, int n) {
  return Polynomial(detail::jensen_weights(f, n));
}

/// f*_n(z) = J(f,n)(z/n). The weight n!/((n-k)! n^k) = prod_{j<k} (1 - j/n)
/// is formed directly, so large n does not overflow.
inline Polynomial jensen_sequence_member(const PowerSeries& f, int n) {
  if (n < 1) throw InvalidArgument("Jensen sequence index must be positive");
  std::vector<Complex> b(static_cast<std::size_t>(n) + 1, 0.0);
  double w = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) w *= 1.0 - static_cast<double>(k - 1) / n;
    b[static_cast<std::size_t>(k)] = w * f[static_cast<std::size_t>(k)];
  }
  return Polynomial(std::move(b));
}

/// h' - b h.
inline Polynomial hermite_poulain(const Polynomial& h, Complex b) {
  return derivative(h, 1) - b * h;
}

}  // namespace polya
