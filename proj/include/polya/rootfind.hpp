#pragma once

// All zeros of a polynomial, with multiplicities.
//
// Pipeline: exact zeros at the origin are split off, the rest go through an
// Aberth-Ehrlich simultaneous iteration started on Newton-polygon circles.
// A multiple zero comes back from the iteration as a ring of approximations
// whose radius grows like u^(1/m); such rings are recognised from the
// conditioning of their members and confirmed by a Taylor test at the
// (Newton-refined) cluster center. Well-conditioned zeros get a Newton polish.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "polya/errors.hpp"
#include "polya/polynomial.hpp"

namespace polya {

struct Root {
  Complex z;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<Root> roots;
  /// |p(z)| / sum_k |c_k||z|^k at each reported location (relative backward error).
  std::vector<double> residuals;
  bool converged = false;

  int total_multiplicity() const noexcept {
    int s = 0;
    for (const auto& r : roots) s += r.multiplicity;
    return s;
  }
};

struct RootFindOptions {
  double tol = 1e-12;
  int max_iter = 200;
  double cluster_eps = 1e-6;
};

/// Each zero repeated according to its multiplicity.
inline std::vector<Complex> flatten(const RootSet& rs) {
  std::vector<Complex> out;
  for (const auto& r : rs.roots) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.z);
  return out;
}

namespace detail {

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

struct LocalEval {
  Complex log_derivative;     // p'/p; meaningless when exact_zero
  bool exact_zero = false;
  double backward_error = 0;  // |p(z)| / sum |c_k||z|^k
  double forward_bound = 0;   // n u sum|c_k||z|^k / |p'(z)|, first-order error of a zero at z
};

// Evaluates at z, switching to the reversed polynomial at 1/z when |z| > 1 so
// that nothing overflows for large zeros of high-degree polynomials.
inline LocalEval local_eval(std::span<const Complex> c, Complex z) {
  const std::size_t n = c.size() - 1;
  const double dn = static_cast<double>(n);
  LocalEval out;
  if (std::abs(z) <= 1.0) {
    Complex p = 0.0, dp = 0.0;
    double e = 0.0;
    const double az = std::abs(z);
    for (std::size_t k = c.size(); k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[k];
      e = e * az + std::abs(c[k]);
    }
    out.exact_zero = p == Complex{};
    out.backward_error = e > 0 ? std::abs(p) / e : 0.0;
    out.log_derivative = out.exact_zero ? Complex{} : dp / p;
    const double adp = std::abs(dp);
    out.forward_bound = adp > 0 ? dn * kUnitRoundoff * e / adp : std::numeric_limits<double>::infinity();
    return out;
  }
  const Complex w = 1.0 / z;
  const double aw = std::abs(w);
  Complex r = 0.0, dr = 0.0;
  double e = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    dr = dr * w + r;
    r = r * w + c[k];
    e = e * aw + std::abs(c[k]);
  }
  out.exact_zero = r == Complex{};
  out.backward_error = e > 0 ? std::abs(r) / e : 0.0;
  out.log_derivative = out.exact_zero ? Complex{} : w * (dn - w * dr / r);
  const double adp = std::abs(dn * r - w * dr);
  out.forward_bound =
      adp > 0 ? dn * kUnitRoundoff * std::abs(z) * e / adp : std::numeric_limits<double>::infinity();
  return out;
}

// Radii from the upper convex hull of (k, log|c_k|); one circle per hull edge.
inline std::vector<Complex> initial_guesses(std::span<const Complex> c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<std::pair<int, double>> pts;
  for (int k = 0; k <= n; ++k)
    if (c[k] != Complex{}) pts.emplace_back(k, std::log(std::abs(c[k])));
  std::vector<std::pair<int, double>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.first - a.first) * (pt.second - a.second) -
                           (b.second - a.second) * (pt.first - a.first);
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  constexpr double golden_angle = std::numbers::pi * (3.0 - 2.2360679774997896964);
  std::vector<Complex> z;
  z.reserve(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const int count = hull[s + 1].first - hull[s].first;
    const double radius = std::exp((hull[s].second - hull[s + 1].second) / count);
    const double phase = 0.4 + golden_angle * static_cast<double>(s + 1);
    for (int t = 0; t < count; ++t)
      z.push_back(std::polar(radius, phase + 2.0 * std::numbers::pi * t / count));
  }
  return z;
}

// Gauss-Seidel Aberth-Ehrlich sweeps. A zero stops moving once its backward
// error reaches rounding level or its correction stagnates.
inline std::vector<Complex> aberth(std::span<const Complex> c, int max_iter) {
  auto z = initial_guesses(c);
  const std::size_t n = z.size();
  const double stop = 4.0 * static_cast<double>(n + 1) * kUnitRoundoff;
  std::vector<char> done(n, 0);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto ev = local_eval(c, z[i]);
      if (ev.exact_zero || ev.backward_error <= stop) {
        done[i] = 1;
        continue;
      }
      all_done = false;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex d = z[i] - z[j];
        if (d == Complex{}) d = Complex(1e-300, 1e-300);
        repulsion += 1.0 / d;
      }
      Complex step = 1.0 / (ev.log_derivative - repulsion);
      if (!is_finite(step)) step = Complex(1e-8, 1e-8) * (1.0 + std::abs(z[i]));
      z[i] -= step;
      if (std::abs(step) <= 2.0 * kUnitRoundoff * std::abs(z[i])) done[i] = 1;
    }
    if (all_done) break;
  }
  return z;
}

inline void newton_polish(std::span<const Complex> c, Complex& z, int steps = 3) {
  auto best = local_eval(c, z);
  for (int s = 0; s < steps && !best.exact_zero; ++s) {
    const Complex candidate = z - 1.0 / best.log_derivative;
    if (!is_finite(candidate)) break;
    const auto ev = local_eval(c, candidate);
    if (ev.backward_error >= best.backward_error) break;
    z = candidate;
    best = ev;
  }
}

// Taylor coefficients t_0..t_m of the polynomial at x, with the matching
// magnitude sums E_j = sum_k |c_k| C(k,j) |x|^(k-j).
inline void taylor_at(std::span<const Complex> c, Complex x, int m, std::vector<Complex>& t,
                      std::vector<double>& e) {
  std::vector<Complex> a(c.begin(), c.end());
  std::vector<double> b(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) b[k] = std::abs(c[k]);
  const double ax = std::abs(x);
  const std::size_t n = c.size() - 1;
  t.assign(static_cast<std::size_t>(m) + 1, 0.0);
  e.assign(static_cast<std::size_t>(m) + 1, 0.0);
  for (std::size_t j = 0; j <= static_cast<std::size_t>(m) && j <= n; ++j) {
    for (std::size_t k = n; k-- > j;) {
      a[k] += x * a[k + 1];
      b[k] += ax * b[k + 1];
    }
    t[j] = a[j];
    e[j] = b[j];
  }
}

// Decides whether `center` approximates a zero of multiplicity >= m. The
// center is first refined by Newton's method on the (m-1)-th derivative, which
// has a simple zero there. Works on the reversed polynomial outside the unit
// disk. On success `center` holds the refined location.
inline bool confirm_multiplicity(std::span<const Complex> c, Complex& center, int m) {
  const std::size_t n = c.size() - 1;
  if (m < 1 || static_cast<std::size_t>(m) > n) return false;
  const bool reversed = std::abs(center) > 1.0;
  std::vector<Complex> rc;
  std::span<const Complex> poly = c;
  if (reversed) {
    rc.assign(c.rbegin(), c.rend());
    poly = rc;
  }
  Complex x = reversed ? 1.0 / center : center;
  std::vector<Complex> t;
  std::vector<double> e;
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    taylor_at(poly, x, m, t, e);
    if (t[m] == Complex{}) break;
    const Complex step = -t[m - 1] / (static_cast<double>(m) * t[m]);
    if (!is_finite(step) || std::abs(step) >= last_step) break;
    x += step;
    last_step = std::abs(step);
    if (last_step <= 4.0 * kUnitRoundoff * (1.0 + std::abs(x))) break;
  }
  taylor_at(poly, x, m, t, e);
  const double threshold = 64.0 * static_cast<double>(n + 1) * kUnitRoundoff;
  for (int j = 0; j < m; ++j)
    if (std::abs(t[j]) > threshold * e[j]) return false;
  if (reversed && x == Complex{}) return false;
  center = reversed ? 1.0 / x : x;
  return true;
}

// Splits `members` at the longest edge of their minimum spanning tree.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_at_longest_edge(
    std::span<const Complex> z, const std::vector<std::size_t>& members) {
  const std::size_t m = members.size();
  std::vector<double> dist(m, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(m, 0);
  std::vector<char> in_tree(m, 0);
  dist[0] = 0;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t u = m;
    for (std::size_t i = 0; i < m; ++i)
      if (!in_tree[i] && (u == m || dist[i] < dist[u])) u = i;
    in_tree[u] = 1;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = std::abs(z[members[u]] - z[members[i]]);
      if (!in_tree[i] && d < dist[i]) {
        dist[i] = d;
        parent[i] = u;
      }
    }
  }
  std::size_t cut = 1;
  for (std::size_t i = 1; i < m; ++i)
    if (dist[i] > dist[cut]) cut = i;
  // Subtree below `cut` forms one side.
  std::vector<char> side(m, 0);
  side[cut] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i < m; ++i)
      if (!side[i] && side[parent[i]] && i != cut && parent[i] != i) {
        side[i] = 1;
        changed = true;
      }
  }
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < m; ++i) (side[i] ? out.second : out.first).push_back(members[i]);
  return out;
}

inline void resolve_clusters(std::span<const Complex> c, std::span<const Complex> z,
                             const std::vector<std::size_t>& members, std::vector<Root>& out) {
  if (members.size() == 1) {
    Complex w = z[members[0]];
    newton_polish(c, w);
    out.push_back({w, 1});
    return;
  }
  Complex center = 0.0;
  for (auto i : members) center += z[i];
  center /= static_cast<double>(members.size());
  if (confirm_multiplicity(c, center, static_cast<int>(members.size()))) {
    out.push_back({center, static_cast<int>(members.size())});
    return;
  }
  auto [a, b] = split_at_longest_edge(z, members);
  resolve_clusters(c, z, a, out);
  resolve_clusters(c, z, b, out);
}

// Single-linkage merge of weighted roots; link radius eps * (1 + max|z|).
inline std::vector<Root> merge_close(std::vector<Root> roots, double eps) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double radius = eps * (1.0 + std::max(std::abs(roots[i].z), std::abs(roots[j].z)));
      if (std::abs(roots[i].z - roots[j].z) <= radius) parent[find(i)] = find(j);
    }
  std::vector<Root> merged;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = merged.size();
      merged.push_back({0.0, 0});
    }
    auto& m = merged[slot[r]];
    m.z += static_cast<double>(roots[i].multiplicity) * roots[i].z;
    m.multiplicity += roots[i].multiplicity;
  }
  for (auto& m : merged) m.z /= static_cast<double>(m.multiplicity);
  return merged;
}

inline void sort_roots(std::vector<Root>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
}

}  // namespace detail

/// Single-linkage clustering with link radius eps * (1 + |z|); each cluster is
/// reported at its centroid with multiplicity equal to its size.
inline std::vector<Root> cluster_roots(std::span<const Complex> raw, double eps) {
  if (!(eps > 0)) throw InvalidArgument("cluster eps must be positive");
  std::vector<Root> roots;
  roots.reserve(raw.size());
  for (const auto& z : raw) roots.push_back({z, 1});
  auto merged = detail::merge_close(std::move(roots), eps);
  detail::sort_roots(merged);
  return merged;
}

inline std::vector<Root> cluster_roots(std::initializer_list<Complex> raw, double eps) {
  return cluster_roots(std::span<const Complex>(raw.begin(), raw.size()), eps);
}

inline RootSet find_roots(const Polynomial& p, const RootFindOptions& opt = {}) {
  if (p.degree() < 1) throw DegreeZero();
  if (!(opt.tol > 0)) throw InvalidArgument("tolerance must be positive");
  if (opt.max_iter < 1) throw InvalidArgument("max_iter must be positive");

  const auto& full = p.coeffs();
  std::size_t origin = 0;
  while (full[origin] == Complex{}) ++origin;
  std::span<const Complex> c(full.data() + origin, full.size() - origin);
  const std::size_t n = c.size() - 1;

  std::vector<Root> found;
  if (origin > 0) found.push_back({0.0, static_cast<int>(origin)});
  if (n == 1) {
    found.push_back({-c[0] / c[1], 1});
  } else if (n > 1) {
    const auto z = detail::aberth(c, opt.max_iter);
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const auto ev = detail::local_eval(c, z[i]);
      if (ev.forward_bound > 1e-7 * (1.0 + std::abs(z[i]))) {
        pool.push_back(i);
      } else {
        Complex w = z[i];
        detail::newton_polish(c, w);
        found.push_back({w, 1});
      }
    }
    if (!pool.empty()) detail::resolve_clusters(c, z, pool, found);
  }

  RootSet out;
  out.roots = detail::merge_close(std::move(found), opt.cluster_eps);
  detail::sort_roots(out.roots);
  out.converged = true;
  for (const auto& r : out.roots) {
    const double res = r.z == Complex{} && origin > 0 ? 0.0 : detail::local_eval(full, r.z).backward_error;
    out.residuals.push_back(res);
    if (!(res <= opt.tol)) out.converged = false;
  }
  return out;
}

inline RootSet find_roots(const Polynomial& p, double tol, int max_iter) {
  return find_roots(p, RootFindOptions{tol, max_iter, RootFindOptions{}.cluster_eps});
}

}  // namespace polya
