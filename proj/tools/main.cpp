// tubegeo: Kobayashi geometry of tube domains over convex bases.
//
// Subcommands:
//   distance     two-point Kobayashi distance with certified bounds
//   geodesic     geodesic trace with case label and boundary-limit report
//   gromov-scan  four-point scans on model spaces and smooth bases
//   verify       property suite: inequalities, uniqueness, reference models
//
// Exit codes: 0 ok, 1 config error, 2 solver failure, 3 budget exhausted,
// 4 property failure. Reports embed the config hash, seed, and tolerance set;
// identical configuration and seed give byte-identical output.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tubegeo/boundary_limits.hpp"
#include "tubegeo/bounds.hpp"
#include "tubegeo/gromov.hpp"
#include "tubegeo/hilbert.hpp"
#include "tubegeo/reference_models.hpp"
#include "tubegeo/report_io.hpp"
#include "tubegeo/solver.hpp"

namespace {

using namespace tubegeo;

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kSolverError = 2;
constexpr int kBudgetError = 3;
constexpr int kPropertyFailure = 4;

struct RunConfig {
  std::string domain = "disc";
  std::string points;
  std::string out;
  std::string format = "json";
  std::string strategy = "analytic";
  Index grid = 33;
  double tol = 1e-6;
  std::uint64_t seed = 12345;
  double target = 0.0;  // 0 = demonstration run, no level enforced
  int degree = 4;
  int budget = 16;
  int pairs = 12;
  bool boundary = false;
  bool inject_hilbert_sign_bug = false;
};

std::string canonical_config(const std::string& subcommand, const RunConfig& c) {
  std::string s = subcommand;
  s += "|domain=" + c.domain;
  s += "|points=" + c.points;
  s += "|format=" + c.format;
  s += "|strategy=" + c.strategy;
  s += "|grid=" + std::to_string(c.grid);
  s += "|tol=" + format_number(c.tol);
  s += "|seed=" + std::to_string(c.seed);
  s += "|target=" + format_number(c.target);
  s += "|degree=" + std::to_string(c.degree);
  s += "|budget=" + std::to_string(c.budget);
  s += "|pairs=" + std::to_string(c.pairs);
  s += "|boundary=" + std::to_string(c.boundary ? 1 : 0);
  s += "|inject=" + std::to_string(c.inject_hilbert_sign_bug ? 1 : 0);
  return s;
}

Json config_json(const std::string& subcommand, const RunConfig& c, Json tolerances) {
  Json j;
  j["hash"] = config_hash(canonical_config(subcommand, c));
  j["seed"] = c.seed;
  j["domain"] = c.domain;
  if (!c.points.empty()) j["points"] = c.points;
  j["tolerances"] = std::move(tolerances);
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ArgumentError("cannot open output file: " + out_path);
  f << text;
}

void emit_json(const Json& j, const std::string& out_path) { emit(j.dump(2) + "\n", out_path); }

double parse_real(const std::string& tok) {
  double v = 0.0;
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  if (begin != end && *begin == '+') ++begin;  // from_chars rejects a leading '+'
  const std::from_chars_result res = std::from_chars(begin, end, v);
  if (begin == end || res.ec != std::errc() || res.ptr != end)
    throw ArgumentError("malformed number literal: '" + tok + "'");
  return v;
}

// Complex literal: "a", "bi", "a+bi", "a-bi" (exponents allowed, e.g. 2e-3i).
Complex parse_complex(std::string tok) {
  std::erase_if(tok, [](char c) { return c == ' ' || c == '\t'; });
  if (tok.empty()) throw ArgumentError("empty coordinate literal");
  const bool imaginary = tok.back() == 'i' || tok.back() == 'I';
  if (!imaginary) return Complex(parse_real(tok), 0.0);

  tok.pop_back();
  // Split at the last sign that is not the leading one and not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t p = tok.size(); p-- > 1;) {
    if (tok[p] != '+' && tok[p] != '-') continue;
    if (tok[p - 1] == 'e' || tok[p - 1] == 'E') continue;
    split = p;
    break;
  }
  if (split == std::string::npos) {
    if (tok.empty() || tok == "+") return Complex(0.0, 1.0);
    if (tok == "-") return Complex(0.0, -1.0);
    return Complex(0.0, parse_real(tok));
  }
  const std::string re = tok.substr(0, split);
  std::string im = tok.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return Complex(parse_real(re), parse_real(im));
}

// Point list: coordinates split by ',', points split by ';'.
std::vector<CVec> parse_points(const std::string& text) {
  std::vector<CVec> points;
  std::stringstream outer(text);
  std::string point_tok;
  while (std::getline(outer, point_tok, ';')) {
    std::vector<Complex> coords;
    std::stringstream inner(point_tok);
    std::string coord_tok;
    while (std::getline(inner, coord_tok, ',')) coords.push_back(parse_complex(coord_tok));
    if (coords.empty()) throw ArgumentError("empty point literal");
    CVec p(static_cast<Index>(coords.size()));
    for (Index i = 0; i < p.size(); ++i) p[i] = coords[static_cast<std::size_t>(i)];
    points.push_back(std::move(p));
  }
  if (points.empty()) throw ArgumentError("no points given; use --points \"x1,..,xn;y1,..,yn\"");
  return points;
}

Vec parse_real_list(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(parse_real(tok));
  if (vals.empty()) throw ArgumentError("empty number list");
  Vec v(static_cast<Index>(vals.size()));
  for (Index i = 0; i < v.size(); ++i) v[i] = vals[static_cast<std::size_t>(i)];
  return v;
}

// Domain file: one key=value per line, '#' comments. Keys: kind (ball |
// ellipsoid | superellipse | interval_product | polytope | paraboloid), n,
// radius, axes, exponent, lo, hi, halfspaces ("a1,..,an,offset;..."),
// interior.
BaseDomain domain_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ArgumentError("domain file not found: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(f, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::erase_if(line, [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ArgumentError("domain file: expected key=value, got '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto need = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ArgumentError(std::string("domain file: missing key '") + key + "'");
    return it->second;
  };

  const std::string kind = need("kind");
  if (kind == "ball") {
    const Index n = static_cast<Index>(parse_real(need("n")));
    const double radius = kv.count("radius") ? parse_real(kv["radius"]) : 1.0;
    return BaseDomain::ball(n, radius);
  }
  if (kind == "ellipsoid") return BaseDomain::ellipsoid(parse_real_list(need("axes")));
  if (kind == "superellipse")
    return BaseDomain::superellipse(parse_real_list(need("axes")), parse_real(need("exponent")));
  if (kind == "interval_product")
    return BaseDomain::interval_product(parse_real_list(need("lo")), parse_real_list(need("hi")));
  if (kind == "paraboloid") return BaseDomain::paraboloid();
  if (kind == "polytope") {
    std::vector<Vec> rows;
    std::stringstream ss(need("halfspaces"));
    std::string row_tok;
    while (std::getline(ss, row_tok, ';')) rows.push_back(parse_real_list(row_tok));
    if (rows.empty()) throw ArgumentError("domain file: halfspaces is empty");
    const Index n = rows.front().size() - 1;
    if (n < 1) throw ArgumentError("domain file: halfspace rows need n coefficients plus an offset");
    Mat normals(static_cast<Index>(rows.size()), n);
    Vec offsets(static_cast<Index>(rows.size()));
    for (Index i = 0; i < normals.rows(); ++i) {
      const Vec& r = rows[static_cast<std::size_t>(i)];
      if (r.size() != n + 1) throw ArgumentError("domain file: inconsistent halfspace row length");
      normals.row(i) = r.head(n).transpose();
      offsets[i] = r[n];
    }
    return BaseDomain::polytope(normals, offsets, parse_real_list(need("interior")));
  }
  throw ArgumentError("domain file: unknown kind '" + kind + "'");
}

// Catalog names, else a key=value file path.
BaseDomain parse_domain(const std::string& spec) {
  if (spec == "disc" || spec == "ball2") return BaseDomain::ball(2);
  if (spec == "ball3") return BaseDomain::ball(3);
  if (spec == "ellipsoid") return BaseDomain::ellipsoid(Vec{{1.2, 0.7}});
  if (spec == "square") return BaseDomain::interval_product(Vec::Zero(2), Vec::Ones(2));
  if (spec == "paraboloid") return BaseDomain::paraboloid();
  return domain_from_file(spec);
}

ConnectOptions connect_options(const RunConfig& cfg) {
  ConnectOptions opts;
  opts.tolerance = cfg.tol;
  opts.seed = cfg.seed;
  return opts;
}

LempertOptions quick_lempert() {
  LempertOptions quick;
  quick.stop_after_first = true;
  quick.s_tol = 1e-3;
  quick.inner_iterations = 8000;
  quick.stall_window = 1500;
  return quick;
}

int cmd_distance(const RunConfig& cfg) {
  const BaseDomain dom = parse_domain(cfg.domain);
  const std::vector<CVec> pts = parse_points(cfg.points);
  if (pts.size() != 2) throw ArgumentError("distance: need exactly two points");
  const CVec& w = pts[0];
  const CVec& z = pts[1];
  if (w.size() != dom.dim() || z.size() != dom.dim())
    throw ArgumentError("distance: point dimension does not match the base");
  if (!contains(dom, w.real()) || !contains(dom, z.real()))
    throw ArgumentError("point outside base");

  const double sandwich_lower_slack = 1e-9;
  const double sandwich_upper_slack = 1e-3;
  Json report;
  report["subcommand"] = "distance";
  report["config"] = config_json("distance", cfg,
                                 Json{{"endpoint", round_sig(cfg.tol)},
                                      {"sandwich_lower_slack", sandwich_lower_slack},
                                      {"sandwich_upper_slack", sandwich_upper_slack}});

  if ((w - z).norm() == 0.0) {
    report["k"] = 0.0;
    report["s"] = 0.0;
    report["lower"] = 0.0;
    report["upper"] = 0.0;
    report["residual_w"] = 0.0;
    report["residual_z"] = 0.0;
    report["sandwich"] = Json{{"lower_ok", true}, {"upper_ok", true}};
    emit_json(report, cfg.out);
    return kOk;
  }

  const GeodesicTrace trace = connect(dom, w, z, connect_options(cfg));
  const double k = atanh_stable(trace.s);
  const double lower = affine_lower_bound(dom, w, z);
  const LempertBound upper = lempert_upper_bound(dom, w, z, cfg.degree, quick_lempert());

  const bool lower_ok = lower <= k + sandwich_lower_slack;
  const bool upper_ok = upper.certified && k <= upper.value + sandwich_upper_slack;
  report["k"] = round_sig(k);
  report["s"] = round_sig(trace.s);
  report["lower"] = round_sig(lower);
  report["upper"] = round_sig(upper.value);
  report["upper_degree"] = upper.degree;
  report["upper_certified"] = upper.certified;
  report["residual_w"] = round_sig(trace.residual_w);
  report["residual_z"] = round_sig(trace.residual_z);
  report["sandwich"] = Json{{"lower_ok", lower_ok}, {"upper_ok", upper_ok}};
  report["certificate"] = to_json(verify_geodesic(dom, trace, VerifyOptions{}));
  emit_json(report, cfg.out);

  if (!lower_ok || !upper_ok) {
    std::fprintf(stderr, "error: distance sandwich failed (lower %.12g, k %.12g, upper %.12g)\n",
                 lower, k, upper.value);
    return kSolverError;
  }
  return kOk;
}

int cmd_geodesic(const RunConfig& cfg) {
  const BaseDomain dom = parse_domain(cfg.domain);
  const std::vector<CVec> pts = parse_points(cfg.points);
  if (pts.size() != 2) throw ArgumentError("geodesic: need exactly two points");
  if (pts[0].size() != dom.dim() || pts[1].size() != dom.dim())
    throw ArgumentError("geodesic: point dimension does not match the base");

  GeodesicTrace trace;
  if (cfg.boundary) {
    if (pts[0].imag().norm() > 0.0 || pts[1].imag().norm() > 0.0)
      throw ArgumentError("geodesic: boundary points must be real");
    trace = connect_boundary(dom, pts[0].real(), pts[1].real(), connect_options(cfg));
  } else {
    if (!contains(dom, pts[0].real()) || !contains(dom, pts[1].real()))
      throw ArgumentError("point outside base");
    trace = connect(dom, pts[0], pts[1], connect_options(cfg));
  }

  Json report;
  report["subcommand"] = "geodesic";
  report["config"] = config_json("geodesic", cfg, Json{{"endpoint", round_sig(cfg.tol)}});
  report["trace"] = trace_json(trace, cfg.grid);
  report["limits"] = to_json(boundary_limits(dom, *trace.evaluator));
  emit_json(report, cfg.out);
  return kOk;
}

int cmd_gromov_scan(const RunConfig& cfg) {
  WitnessSpace space = WitnessSpace::polydisc();
  std::string space_name = "polydisc";
  if (cfg.domain != "polydisc") {
    BaseDomain dom = parse_domain(cfg.domain);
    if (dom.kind() == DomainKind::kIntervalProduct) {
      if (dom.dim() != 2 || dom.box_lo().norm() > 0.0 || (dom.box_hi() - Vec::Ones(2)).norm() > 0.0)
        throw ArgumentError("gromov-scan: interval-product scans support the unit square base");
      space = WitnessSpace::square_tube();
      space_name = "square_tube";
    } else {
      space = WitnessSpace::smooth_base(std::move(dom));
      space_name = "smooth_base";
    }
  }

  WitnessOptions opts;
  opts.strategy = cfg.strategy == "random" ? WitnessStrategy::kRandomSearch
                                           : WitnessStrategy::kAnalyticSchedule;
  if (cfg.strategy != "random" && cfg.strategy != "analytic")
    throw ArgumentError("gromov-scan: strategy must be 'analytic' or 'random'");
  if (space.kind == WitnessSpace::Kind::kSmoothBase) opts.strategy = WitnessStrategy::kRandomSearch;
  opts.target = cfg.target > 0.0 ? cfg.target : std::numeric_limits<double>::infinity();
  opts.budget = cfg.budget;
  opts.seed = cfg.seed;
  opts.degree = cfg.degree;

  const WitnessSearchResult result = witness_search(space, opts);
  const bool achieved = cfg.target > 0.0 ? result.achieved : true;

  const std::string hash = config_hash(canonical_config("gromov-scan", cfg));
  if (cfg.format == "csv") {
    std::vector<std::string> header = {
        "config_hash=" + hash,
        "seed=" + std::to_string(cfg.seed),
        "space=" + space_name,
        "strategy=" + std::string(opts.strategy == WitnessStrategy::kRandomSearch ? "random" : "analytic"),
        "budget=" + std::to_string(cfg.budget),
        "target=" + format_number(cfg.target),
        "columns=step,parameter,S,S_high,witness coordinates",
    };
    emit(witness_schedule_csv(result, header), cfg.out);
  } else {
    Json report;
    report["subcommand"] = "gromov-scan";
    report["config"] = config_json("gromov-scan", cfg, Json{{"target", round_sig(cfg.target)}});
    report["space"] = space_name;
    report["strategy"] = opts.strategy == WitnessStrategy::kRandomSearch ? "random" : "analytic";
    report["budget"] = cfg.budget;
    report["max_s"] = round_sig(result.best_s);
    report["achieved"] = achieved;
    report["steps_recorded"] = result.entries.size();
    Json entries = Json::array();
    for (const QuadrupleReport& q : result.entries) entries.push_back(to_json(q));
    report["entries"] = entries;
    emit_json(report, cfg.out);
  }

  if (!achieved) {
    std::fprintf(stderr, "error: witness search exhausted its budget below target %.12g (best %.12g)\n",
                 cfg.target, result.best_s);
    return kBudgetError;
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const BaseDomain dom = parse_domain(cfg.domain);
  if (!dom.smooth() || !dom.bounded())
    throw ArgumentError("verify: the --domain base must be smooth and bounded");

  Json checks = Json::array();
  bool all_pass = true;
  auto add = [&](const char* name, Json tolerances, bool pass, Json detail) {
    Json entry;
    entry["name"] = name;
    entry["tolerances"] = std::move(tolerances);
    entry["pass"] = pass;
    entry["detail"] = std::move(detail);
    checks.push_back(std::move(entry));
    all_pass = all_pass && pass;
  };

  {
    const HilbertCheckReport rep = check_hilbert_inequality(dom, cfg.pairs, cfg.seed);
    bool pass = rep.pass;
    Json detail = to_json(rep);
    if (cfg.inject_hilbert_sign_bug) {
      // Negative control: require the reversed inequality h <= 2k instead.
      pass = rep.converged == rep.pairs && rep.max_slack <= 1e-5;
      detail["injected_sign_bug"] = true;
    }
    add("hilbert_inequality", Json{{"slack", -1e-5}}, pass, std::move(detail));
  }

  {
    std::mt19937_64 gen(cfg.seed);
    const CVec w = detail::sample_tube_point(gen, dom, 0.05, 0.5);
    const CVec z = detail::sample_tube_point(gen, dom, 0.05, 0.5);
    const UniquenessReport rep = uniqueness_probe(dom, w, z, 4, connect_options(cfg));
    const bool pass = rep.converged >= 2 && rep.max_profile_deviation <= 1e-5;
    add("geodesic_uniqueness", Json{{"profile_deviation", 1e-5}}, pass, to_json(rep));

    const Vec x = detail::sample_interior(gen, dom, 0.05);
    const Vec y = detail::sample_interior(gen, dom, 0.05);
    const UniquenessReport real_rep =
        uniqueness_probe(dom, x.cast<Complex>().eval(), y.cast<Complex>().eval(), 3,
                         connect_options(cfg));
    const bool real_pass =
        real_rep.real_pair && real_rep.converged >= 2 && real_rep.max_im_on_reals <= 1e-7;
    add("real_pair_reality", Json{{"im_on_reals", 1e-7}}, real_pass, to_json(real_rep));
  }

  {
    SiegelOptions opts;
    opts.triples = 60;
    opts.seed = cfg.seed + 17;
    const SiegelReport rep = siegel_check(opts);
    add("siegel_model", Json{{"axiom_defect", 1e-10}}, rep.pass, to_json(rep));
  }

  {
    Example2Options opts;
    opts.samples = 300;
    opts.seed = cfg.seed + 29;
    const Example2Report rep = example2_check(opts);
    add("example2_model", Json{{"involution_defect", 1e-12}}, rep.pass, to_json(rep));
  }

  {
    const QuadrupleReport rep = polydisc_witness(0.9);
    const double defect = std::abs(rep.s() - 2.0 * atanh_stable(0.9));
    add("polydisc_witness", Json{{"s_defect", 1e-12}}, defect <= 1e-12, to_json(rep));
  }

  {
    const BaseDomain square = BaseDomain::interval_product(Vec::Zero(2), Vec::Ones(2));
    std::vector<double> schedule;
    for (int k = 0; k <= 8; ++k) schedule.push_back(std::ldexp(1.0, k));
    const CVec p1{{Complex(1.0, 0.3), Complex(1.5, -0.1)}};
    const CVec q1{{Complex(2.0, -0.2), Complex(1.2, 0.4)}};
    const CVec p2{{Complex(1.3, 0.0), Complex(1.9, 0.6)}};
    const CVec q2{{Complex(1.1, 0.5), Complex(1.4, 0.0)}};
    const BlowupReport rep =
        blowup_convergence_check(square, Vec::Zero(2), schedule, {{p1, q1}, {p2, q2}});
    const bool pass = rep.first_box_inside >= 0 && rep.gap_at_final <= 1e-3 &&
                      rep.max_scaling_defect <= 1e-12;
    add("corner_blowup", Json{{"cone_gap", 1e-3}, {"scaling_defect", 1e-12}}, pass, to_json(rep));
  }

  Json report;
  report["subcommand"] = "verify";
  report["config"] = config_json("verify", cfg, Json{{"hilbert_slack", -1e-5},
                                                     {"profile_deviation", 1e-5},
                                                     {"im_on_reals", 1e-7}});
  report["checks"] = checks;
  report["pass"] = all_pass;
  emit_json(report, cfg.out);
  return all_pass ? kOk : kPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kobayashi geometry of tube domains over convex bases"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--domain", cfg.domain, "catalog name or key=value domain file");
    sub->add_option("--seed", cfg.seed, "random seed recorded in the report");
    sub->add_option("--out", cfg.out, "output path (default: stdout)");
    sub->add_option("--format", cfg.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* distance = app.add_subcommand("distance", "two-point Kobayashi distance with bounds");
  add_common(distance);
  distance->add_option("--points", cfg.points, "two points: \"x1,..,xn;y1,..,yn\"")->required();
  distance->add_option("--tol", cfg.tol, "solver endpoint tolerance");
  distance->add_option("--degree", cfg.degree, "disc degree for the upper bound");

  CLI::App* geodesic = app.add_subcommand("geodesic", "geodesic trace and boundary limits");
  add_common(geodesic);
  geodesic->add_option("--points", cfg.points, "two points (with --boundary: real boundary points)")
      ->required();
  geodesic->add_option("--tol", cfg.tol, "solver endpoint tolerance");
  geodesic->add_option("--grid", cfg.grid, "curve sample count");
  geodesic->add_flag("--boundary", cfg.boundary, "connect two boundary points of the base");

  CLI::App* gromov = app.add_subcommand("gromov-scan", "four-point witness scans");
  add_common(gromov);
  gromov->add_option("--target", cfg.target, "required S level (0 = demonstration only)");
  gromov->add_option("--budget", cfg.budget, "schedule length / candidate budget");
  gromov->add_option("--strategy", cfg.strategy, "analytic | random");
  gromov->add_option("--degree", cfg.degree, "disc degree for interval-mode bounds");

  CLI::App* verify = app.add_subcommand("verify", "run the property suite");
  add_common(verify);
  verify->add_option("--pairs", cfg.pairs, "sample pairs for the Hilbert check");
  verify->add_option("--tol", cfg.tol, "solver endpoint tolerance");
  verify->add_flag("--inject-hilbert-sign-bug", cfg.inject_hilbert_sign_bug,
                   "negative control: reverse the Hilbert inequality");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }

  try {
    if (app.got_subcommand(distance)) return cmd_distance(cfg);
    if (app.got_subcommand(geodesic)) return cmd_geodesic(cfg);
    if (app.got_subcommand(gromov)) return cmd_gromov_scan(cfg);
    return cmd_verify(cfg);
  } catch (const BudgetError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBudgetError;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "error: %s (residual %.3g)\n", e.what(), e.residual());
    return kSolverError;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }
}
