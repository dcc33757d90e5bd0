#pragma once

// Random fixtures and comparison helpers shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "polya/polya.hpp"

namespace polya::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Complex polar_in_annulus(Rng& rng, double r_min, double r_max) {
  return std::polar(uniform(rng, r_min, r_max), uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

// Roots whose pairwise distances are at least `gap`.
inline std::vector<Complex> separated_roots(Rng& rng, int count, double r_min, double r_max, double gap) {
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    const Complex z = polar_in_annulus(rng, r_min, r_max);
    if (std::all_of(out.begin(), out.end(), [&](Complex w) { return std::abs(z - w) >= gap; }))
      out.push_back(z);
  }
  return out;
}

// Real polynomial with real and conjugate-pair zeros in the given annulus.
inline std::vector<Complex> real_root_set(Rng& rng, int degree, double r_min, double r_max) {
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < degree) {
    if (degree - static_cast<int>(out.size()) >= 2 && uniform(rng, 0, 1) < 0.5) {
      const Complex z = polar_in_annulus(rng, r_min, r_max);
      out.push_back(z);
      out.push_back(std::conj(z));
    } else {
      const double x = uniform(rng, r_min, r_max);
      out.push_back(uniform(rng, 0, 1) < 0.5 ? -x : x);
    }
  }
  return out;
}

inline Polynomial random_real_coefficients(Rng& rng, int degree) {
  std::vector<Complex> c;
  for (int k = 0; k <= degree; ++k) c.emplace_back(uniform(rng, -1.0, 1.0), 0.0);
  if (c.back() == Complex{}) c.back() = 1.0;
  return Polynomial(std::move(c));
}

// Largest distance under a greedy nearest matching of two equal-size multisets.
inline double matching_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Complex z : a) {
    auto best = std::min_element(b.begin(), b.end(), [z](Complex u, Complex v) {
      return std::abs(u - z) < std::abs(v - z);
    });
    worst = std::max(worst, std::abs(*best - z));
    b.erase(best);
  }
  return worst;
}

inline double relative_error(Complex got, Complex want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace polya::testing
