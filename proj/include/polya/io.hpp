#pragma once

// JSON and CSV formats. Polynomials and series are {"coeffs": [[re, im], ...]}
// in ascending order; root sets are
// {"roots": [{"z": [re, im], "mult": m}], "residuals": [...], "converged": b}.
// Requires nlohmann/json.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polya/classify.hpp"
#include "polya/convergence.hpp"
#include "polya/errors.hpp"
#include "polya/polynomial.hpp"
#include "polya/powersums.hpp"
#include "polya/regions.hpp"
#include "polya/rootfind.hpp"

namespace polya::io {

using nlohmann::json;

namespace detail {

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based; report line and column as well.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON", "byte " + std::to_string(e.byte) + ", line " +
                                           std::to_string(line) + ", column " + std::to_string(col));
  }
}

inline double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError("expected a number", where);
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError("non-finite number", where);
  return x;
}

inline Complex complex_at(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError("expected [re, im]", where);
  if (v.size() < 2) throw ParseError("missing imaginary part", where);
  if (v.size() > 2) throw ParseError("expected exactly [re, im]", where);
  return {number_at(v[0], where + "/0"), number_at(v[1], where + "/1")};
}

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline std::vector<Complex> coeffs_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("expected a JSON object", "/");
  const auto it = doc.find("coeffs");
  if (it == doc.end()) throw ParseError("missing \"coeffs\"", "/");
  if (!it->is_array()) throw ParseError("\"coeffs\" must be an array", "/coeffs");
  std::vector<Complex> c;
  for (std::size_t k = 0; k < it->size(); ++k)
    c.push_back(complex_at((*it)[k], "/coeffs/" + std::to_string(k)));
  return c;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text) {
  return Polynomial(detail::coeffs_from_json(detail::parse_json(text)));
}

inline PowerSeries parse_series(std::string_view text) {
  auto c = detail::coeffs_from_json(detail::parse_json(text));
  if (c.empty()) throw ParseError("series needs at least one coefficient", "/coeffs");
  return PowerSeries(std::move(c));
}

inline Polynomial read_polynomial(const std::string& path) {
  try {
    return parse_polynomial(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.where());
  }
}

inline PowerSeries read_series(const std::string& path) {
  try {
    return parse_series(detail::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.where());
  }
}

inline json to_json(const std::vector<Complex>& coeffs) {
  json c = json::array();
  for (Complex z : coeffs) c.push_back(detail::complex_json(z));
  return json{{"coeffs", c}};
}
inline json to_json(const Polynomial& p) { return to_json(p.coeffs()); }
inline json to_json(const PowerSeries& f) { return to_json(f.coeffs()); }

inline json to_json(const RootSet& rs) {
  json roots = json::array();
  for (const auto& r : rs.roots) roots.push_back({{"z", detail::complex_json(r.z)}, {"mult", r.multiplicity}});
  return {{"roots", roots}, {"residuals", rs.residuals}, {"converged", rs.converged}};
}

inline RootSet parse_root_set(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object()) throw ParseError("expected a JSON object", "/");
  RootSet rs;
  const auto roots = doc.find("roots");
  if (roots == doc.end() || !roots->is_array()) throw ParseError("missing \"roots\" array", "/roots");
  for (std::size_t i = 0; i < roots->size(); ++i) {
    const std::string where = "/roots/" + std::to_string(i);
    const auto& r = (*roots)[i];
    if (!r.is_object() || !r.contains("z")) throw ParseError("root needs \"z\"", where);
    Root root{detail::complex_at(r["z"], where + "/z"), 1};
    if (r.contains("mult")) {
      if (!r["mult"].is_number_integer() || r["mult"].get<int>() < 1)
        throw ParseError("\"mult\" must be a positive integer", where + "/mult");
      root.multiplicity = r["mult"].get<int>();
    }
    rs.roots.push_back(root);
  }
  if (const auto res = doc.find("residuals"); res != doc.end()) {
    if (!res->is_array()) throw ParseError("\"residuals\" must be an array", "/residuals");
    for (std::size_t i = 0; i < res->size(); ++i)
      rs.residuals.push_back(detail::number_at((*res)[i], "/residuals/" + std::to_string(i)));
  }
  if (const auto conv = doc.find("converged"); conv != doc.end()) {
    if (!conv->is_boolean()) throw ParseError("\"converged\" must be a boolean", "/converged");
    rs.converged = conv->get<bool>();
  }
  return rs;
}

/// k, re(s_k), im(s_k), s_tilde_k; the last column is blank when s~ is unavailable.
inline void write_sums_csv(const SumTable& t, std::ostream& out) {
  out << "k,re_s_k,im_s_k,s_tilde_k\n";
  for (std::size_t k = 0; k < t.s.size(); ++k) {
    out << k + 1 << ',' << detail::fmt(t.s[k].real()) << ',' << detail::fmt(t.s[k].imag()) << ',';
    if (k < t.s_tilde.size()) out << detail::fmt(t.s_tilde[k]);
    out << '\n';
  }
}

inline void write_counts_csv(const std::vector<int>& counts, std::ostream& out) {
  out << "n,N_n\n";
  for (std::size_t n = 0; n < counts.size(); ++n) out << n << ',' << counts[n] << '\n';
}

inline json to_json(const ClassVerdict& v) {
  json violations = json::array();
  for (const auto& w : v.violations) violations.push_back({{"n", w.n}, {"witness", detail::complex_json(w.witness)}});
  json out{{"class", to_string(v.class_id)},
           {"n_max", v.n_max},
           {"verdict", to_string(v.verdict)},
           {"counts", v.counts},
           {"violations", violations},
           {"tol", v.tol},
           {"plateau", v.plateau}};
  out["stabilized_at"] = v.stabilized_at ? json(*v.stabilized_at) : json(nullptr);
  out["stabilized_value"] = v.stabilized_value ? json(*v.stabilized_value) : json(nullptr);
  return out;
}

inline json to_json(const ConvergenceReport& r) {
  json limits = json::array();
  for (Complex a : r.limit_coeffs) limits.push_back(detail::complex_json(a));
  json strong = json::array();
  for (const auto& s : r.strong) strong.push_back({{"radius", s.radius}, {"n", s.n}, {"m", s.m}, {"sup", s.sup}});
  json decay = json::array();
  for (const auto& d : r.decay)
    decay.push_back({{"radius", d.radius}, {"sups", d.sups}, {"ratios", d.ratios}, {"monotone", d.monotone}});
  json hyps = json::array();
  for (const auto& h : r.hypotheses) hyps.push_back({{"name", h.name}, {"passed", h.passed}, {"witness", h.witness}});
  return {{"sequence", r.sequence},
          {"theorem", r.theorem},
          {"window", r.window},
          {"k_max", r.k_max},
          {"eps", r.eps},
          {"weak", {{"osc", r.osc}, {"limit_coeffs", limits}, {"degenerate", r.degenerate}}},
          {"strong", strong},
          {"decay", decay},
          {"hypothesis_checks", hyps},
          {"conclusion_checked", r.conclusion_checked},
          {"conclusion_holds", r.conclusion_holds}};
}

inline json to_json(const CoverResult& c) {
  return {{"exponents", c.exponents}, {"samples", c.samples}, {"covered", c.covered},
          {"coverage", c.coverage},   {"q_max", c.q_max}};
}

inline json to_json(const FactorGrid& g) {
  return {{"radial", g.radial}, {"angular", g.angular}, {"r_min", g.r_min}, {"r_max", g.r_max},
          {"exclusion", g.exclusion}};
}

inline json to_json(const FactorEstimate& e) {
  return {{"p", e.p}, {"c_p", e.value}, {"argmax", detail::complex_json(e.argmax)}, {"grid", to_json(e.grid)}};
}

}  // namespace polya::io
