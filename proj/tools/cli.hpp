#pragma once

// Command-line front end. run() takes the full argument vector (program name
// first) and returns the exit status: 0 success, 2 precondition/hypothesis
// violation or bad input, 1 internal failure.

#include <glob.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polya/io.hpp"
#include "polya/polya.hpp"

namespace polya::cli {

using nlohmann::json;

// Thrown once the JSON error body of a failed hypothesis has been written.
struct HypothesisReported {};

namespace detail {

inline std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const HypothesisViolated*>(&e)) return "HypothesisViolated";
  if (dynamic_cast<const CoverageIncomplete*>(&e)) return "CoverageIncomplete";
  if (dynamic_cast<const UnknownGenerator*>(&e)) return "UnknownGenerator";
  if (dynamic_cast<const NonRealCoefficients*>(&e)) return "NonRealCoefficients";
  if (dynamic_cast<const ConstantTermZero*>(&e)) return "ConstantTermZero";
  if (dynamic_cast<const DegreeZero*>(&e)) return "DegreeZero";
  if (dynamic_cast<const RootAtOrigin*>(&e)) return "RootAtOrigin";
  if (dynamic_cast<const NormalizationError*>(&e)) return "NormalizationError";
  if (dynamic_cast<const RootsOutsideSector*>(&e)) return "RootsOutsideSector";
  if (dynamic_cast<const Overflow*>(&e)) return "Overflow";
  if (dynamic_cast<const NotFound*>(&e)) return "NotFound";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
  return "InternalError";
}

// Writes to `path`, or to `out` when the path is empty or "-".
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::string> paths;
  if (rc == 0)
    for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
  globfree(&g);
  if (paths.empty()) throw InvalidArgument("no files match '" + pattern + "'");
  std::sort(paths.begin(), paths.end());
  return paths;
}

// Points given as "re,im;re,im;...".
inline std::vector<Complex> parse_points(const std::string& text) {
  std::vector<Complex> pts;
  std::stringstream ss(text);
  std::string item;
  std::size_t index = 0;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw ParseError("point needs re,im", "point " + std::to_string(index));
    try {
      std::size_t used_re = 0, used_im = 0;
      const std::string re = item.substr(0, comma), im = item.substr(comma + 1);
      const double x = std::stod(re, &used_re), y = std::stod(im, &used_im);
      if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument(item);
      pts.emplace_back(x, y);
    } catch (const std::logic_error&) {
      throw ParseError("bad number in '" + item + "'", "point " + std::to_string(index));
    }
    ++index;
  }
  if (pts.empty()) throw InvalidArgument("no points given");
  return pts;
}

// Log-log plot of sup|f_n - f_m| against n, one polyline per radius.
inline std::string svg_plot(const ConvergenceReport& rep) {
  constexpr double W = 480, H = 320, L = 60, R = 20, T = 20, B = 40;
  std::vector<const StrongSample*> pts;
  for (const auto& s : rep.strong)
    if (s.sup > 0 && std::isfinite(s.sup)) pts.push_back(&s);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!pts.empty()) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto* s : pts) {
      xmin = std::min(xmin, std::log10(s->n));
      xmax = std::max(xmax, std::log10(s->n));
      ymin = std::min(ymin, std::log10(s->sup));
      ymax = std::max(ymax, std::log10(s->sup));
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1;
    if (ymax - ymin < 1e-12) ymax = ymin + 1;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::vector<double> radii;
    for (const auto* s : pts)
      if (std::find(radii.begin(), radii.end(), s->radius) == radii.end()) radii.push_back(s->radius);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      os << "<polyline fill=\"none\" stroke=\"" << colors[i % 5] << "\" points=\"";
      for (const auto* s : pts)
        if (s->radius == radii[i]) os << px(std::log10(s->n)) << ',' << py(std::log10(s->sup)) << ' ';
      os << "\"/>\n";
      os << "<text x=\"" << W - R - 80 << "\" y=\"" << T + 16 * (i + 1) << "\" fill=\"" << colors[i % 5]
         << "\" font-size=\"12\">r = " << radii[i] << "</text>\n";
    }
    os << "<text x=\"" << L << "\" y=\"" << H - 10 << "\" font-size=\"12\">log10 n: " << xmin << " .. " << xmax
       << "</text>\n";
    os << "<text x=\"4\" y=\"" << T + 12 << "\" font-size=\"12\">log10 sup: " << ymin << " .. " << ymax
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeros of Jensen/Appell polynomials, power sums and convergence of polynomial sequences",
               "polya_zeros"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--out", output, "primary output file (default stdout)");

  std::function<void()> action;
  std::string input;

  // roots
  auto* roots = app.add_subcommand("roots", "zeros of a polynomial with multiplicities");
  RootFindOptions ropt;
  roots->add_option("input", input, "polynomial JSON")->required();
  roots->add_option("--tol", ropt.tol, "backward-error tolerance");
  roots->add_option("--max-iter", ropt.max_iter, "iteration cap");
  roots->add_option("--cluster-eps", ropt.cluster_eps, "cluster merge radius factor");
  roots->callback([&] {
    action = [&] { detail::emit(output, detail::dump(io::to_json(find_roots(io::read_polynomial(input), ropt))), out); };
  });

  // sums
  auto* sums = app.add_subcommand("sums", "Newton power sums s_k and s~_k as CSV");
  int k_max = 8;
  std::string region_spec, source = "roots";
  sums->add_option("input", input, "polynomial JSON")->required();
  sums->add_option("-k,--kmax", k_max, "largest k")->check(CLI::PositiveNumber);
  sums->add_option("--region", region_spec, "restrict to zeros in a region (H, R, RHP, S:c, S:c^1/p, D:r, ray, !X)");
  sums->add_option("--source", source, "roots or coeffs")->check(CLI::IsMember({"roots", "coeffs"}));
  sums->callback([&] {
    action = [&] {
      const auto p = io::read_polynomial(input);
      SumTable t;
      if (source == "coeffs") {
        if (!region_spec.empty()) throw InvalidArgument("--region needs --source roots");
        t = power_sums_from_coeffs(p, k_max);
      } else {
        std::optional<Region> region;
        if (!region_spec.empty()) region = Region::parse(region_spec);
        t = power_sums_from_roots(find_roots(p), k_max, region);
      }
      std::ostringstream os;
      io::write_sums_csv(t, os);
      detail::emit(output, os.str(), out);
    };
  });

  // jensen / appell
  int n = 0;
  bool scale_by_n = false;
  for (const char* name : {"jensen", "appell"}) {
    const bool is_jensen = std::string(name) == "jensen";
    auto* sub = app.add_subcommand(name, is_jensen ? "Jensen polynomial J(f,n)" : "Appell polynomial A(f,n)");
    sub->add_option("input", input, "series JSON")->required();
    sub->add_option("-n,--n", n, "index n")->required()->check(CLI::NonNegativeNumber);
    sub->add_flag("--scale-by-n", scale_by_n,
                  is_jensen ? "emit J(f,n)(z/n)" : "emit the reversal z^n J(f,n)(1/(nz))");
    sub->callback([&, is_jensen] {
      action = [&, is_jensen] {
        const auto f = io::read_series(input);
        Polynomial p;
        if (scale_by_n) {
          auto c = jensen_sequence_member(f, n).coeffs();
          c.resize(static_cast<std::size_t>(n) + 1, 0.0);
          if (!is_jensen) std::reverse(c.begin(), c.end());
          p = Polynomial(std::move(c));
        } else {
          p = is_jensen ? jensen(f, n) : appell(f, n);
        }
        detail::emit(output, detail::dump(io::to_json(p)), out);
      };
    });
  }

  // classify
  auto* classify = app.add_subcommand("classify", "membership of a truncated series in PO, LP, LP*, LP(S0)*");
  std::string cls;
  int n_max = 20;
  MembershipOptions mopt;
  std::string csv_path;
  classify->add_option("input", input, "series JSON")->required();
  classify->add_option("--class", cls, "po, lp, lp* or lps0*")->required();
  classify->add_option("--nmax", n_max, "largest n")->check(CLI::Range(2, 100000));
  classify->add_option("--tol", mopt.tol, "boundary tolerance of the target regions");
  classify->add_option("--plateau", mopt.plateau, "tail plateau length for stabilization")->check(CLI::PositiveNumber);
  classify->add_option("--csv", csv_path, "(n, N_n) CSV file (default: <out>.csv when --out is given)");
  classify->callback([&] {
    action = [&] {
      const auto v = check_membership(io::read_series(input), parse_membership_class(cls), n_max, mopt);
      detail::emit(output, detail::dump(io::to_json(v)), out);
      std::string csv = csv_path;
      if (csv.empty() && !output.empty() && output != "-") csv = output + ".csv";
      if (!csv.empty()) {
        std::ostringstream os;
        io::write_counts_csv(v.counts, os);
        detail::emit(csv, os.str(), out);
      }
    };
  });

  // converge
  auto* converge = app.add_subcommand("converge", "weak/strong convergence report for a polynomial sequence");
  std::string gen, files, theorem, plot;
  std::vector<double> radii{1.0, 2.0};
  std::vector<int> window{16, 128};
  SequenceParams sparams;
  TheoremParams tparams;
  double M = 0;
  int bound = 0;
  auto* gen_opt = converge->add_option("--gen", gen, "built-in generator id");
  auto* files_opt = converge->add_option("--files", files, "glob of polynomial JSON files (sorted; index from 1)");
  gen_opt->excludes(files_opt);
  converge->add_option("--theorem", theorem, "T1.1, T1.2, T2.3 or T2.4");
  converge->add_option("--radii", radii, "circle radii")->delimiter(',');
  converge->add_option("--window", window, "lo,hi: dyadic indices in [lo, hi] (all indices for --files)")
      ->delimiter(',')
      ->expected(2);
  converge->add_option("--seed", sparams.seed, "generator seed");
  converge->add_option("--degree", sparams.degree, "fixed-factor degree (H-random, sector-random)");
  converge->add_option("--k", sparams.k, "non-real zero count (real-with-k-nonreal)");
  converge->add_option("--c", sparams.c, "sector parameter (sector-random)");
  converge->add_option("--p", sparams.p, "exponent p (sector-random, T2.3, T2.4)");
  converge->add_option("--kmax", tparams.k_max, "coefficients probed for weak convergence");
  converge->add_option("--eps", tparams.eps, "threshold for a nonzero limit coefficient");
  converge->add_option("--samples", tparams.samples, "points per circle")->check(CLI::Range(64, 1 << 20));
  auto* m_opt = converge->add_option("--M", M, "bound on s~_p (T2.3)");
  auto* bound_opt = converge->add_option("--bound", bound, "bound on the non-real zero count (T1.2)");
  converge->add_option("--plot", plot, "SVG log-log plot of sup error against n");
  converge->callback([&] {
    action = [&] {
      std::optional<PolySequence> seq;
      if (!gen.empty()) {
        seq = builtin_sequence(gen, sparams);
        tparams.window = dyadic_indices(window[0], window[1]);
      } else if (!files.empty()) {
        std::vector<Polynomial> members;
        for (const auto& path : detail::expand_glob(files)) members.push_back(io::read_polynomial(path));
        seq = PolySequence::from_list(files, std::move(members));
        tparams.window.clear();
        for (int i = seq->first(); i <= seq->last(); ++i) tparams.window.push_back(i);
      } else {
        throw InvalidArgument("converge needs --gen or --files");
      }
      if (tparams.window.size() < 2) throw InvalidArgument("probe window needs at least two indices");
      tparams.radii = radii;
      tparams.p = sparams.p;
      if (*m_opt) tparams.M = M;
      if (*bound_opt) tparams.nonreal_bound = bound;

      ConvergenceReport rep;
      if (theorem.empty()) {
        rep = weak_convergence_probe(*seq, tparams.k_max, tparams.window, tparams.eps);
        rep.strong = strong_convergence_probe(*seq, radii, tparams.samples, consecutive_pairs(rep.window));
        rep.decay = polya::detail::decay_rows(rep.strong, radii);
      } else {
        rep = validate_theorem(*seq, parse_theorem(theorem), tparams);
      }
      const std::string text = detail::dump(io::to_json(rep));
      if (!plot.empty()) detail::emit(plot, detail::svg_plot(rep), out);
      if (!rep.hypotheses_hold()) {
        if (!output.empty() && output != "-") detail::emit(output, text, out);
        try {
          require_hypotheses(rep);
        } catch (const HypothesisViolated& e) {
          json body{{"error", "HypothesisViolated"},
                    {"message", e.what()},
                    {"hypothesis", e.hypothesis()},
                    {"witness", e.witness()},
                    {"report", io::to_json(rep)}};
          err << body.dump(2) << "\n";
          throw HypothesisReported{};
        }
      }
      detail::emit(output, text, out);
    };
  });

  // cover
  auto* cover = app.add_subcommand("cover", "even exponents q putting points into the right half-plane");
  int tuple_size = 2, q_max = 256;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::string points;
  double cover_tol = kDefaultBoundaryTol;
  cover->add_option("--points", points, "\"re,im;re,im;...\": smallest admissible even q for these points");
  cover->add_option("--N", tuple_size, "tuple size for the random covering")->check(CLI::PositiveNumber);
  cover->add_option("--qmax", q_max, "largest exponent");
  cover->add_option("--trials", trials, "random tuples");
  cover->add_option("--seed", seed, "sampling seed");
  cover->add_option("--tol", cover_tol, "boundary tolerance");
  cover->callback([&] {
    action = [&] {
      json result;
      if (!points.empty()) {
        const auto pts = detail::parse_points(points);
        result = {{"q", find_even_power(pts, q_max, cover_tol)}, {"q_max", q_max}};
      } else {
        try {
          result = io::to_json(covering_exponents(tuple_size, q_max, trials, seed, cover_tol));
          result["uncovered"] = json::array();
        } catch (const CoverageIncomplete& e) {
          // The partial cover is the answer; report the first failing tuple alongside.
          result = io::to_json(e.partial());
          json bad = json::array();
          for (Complex z : e.failing_sample()) bad.push_back(json::array({z.real(), z.imag()}));
          result["uncovered"] = json::array({bad});
        }
        result["N"] = tuple_size;
        result["seed"] = seed;
      }
      detail::emit(output, detail::dump(result), out);
    };
  });

  // cp
  auto* cp = app.add_subcommand("cp", "estimate the growth constant c_p on a grid and its 2x refinement");
  int p = 2;
  FactorGrid grid;
  cp->add_option("--p", p, "exponent p >= 2");
  cp->add_option("--radial", grid.radial, "radial grid points");
  cp->add_option("--angular", grid.angular, "angular grid points");
  cp->add_option("--rmin", grid.r_min, "smallest radius");
  cp->add_option("--rmax", grid.r_max, "largest radius");
  cp->callback([&] {
    action = [&] {
      const auto coarse = estimate_factor_constant(p, grid);
      const auto fine = estimate_factor_constant(p, grid.refined());
      json result = io::to_json(fine);
      result["coarse"] = io::to_json(coarse);
      result["relative_change"] = std::abs(fine.value - coarse.value) / std::abs(fine.value);
      detail::emit(output, detail::dump(result), out);
    };
  });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "UsageError"}, {"message", e.what()}}.dump(2) << "\n";
    return 2;
  }

  try {
    action();
    return 0;
  } catch (const HypothesisReported&) {
    return 2;
  } catch (const ParseError& e) {
    err << json{{"error", "ParseError"}, {"message", e.what()}, {"where", e.where()}}.dump(2) << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << json{{"error", detail::error_kind(e)}, {"message", e.what()}}.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << json{{"error", detail::error_kind(e)}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  }
}

}  // namespace polya::cli
