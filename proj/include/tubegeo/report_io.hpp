#pragma once

// Deterministic report emission. Every floating-point value is quantized to
// 12 significant digits before serialization, so identical configurations and
// seeds produce byte-identical files: JSON stores the quantized doubles
// (printed with the shortest round-trip representation), CSV prints the same
// 12-digit form directly. Formatting goes through <charconv> and never
// consults a locale; the decimal separator is always '.'.

#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "tubegeo/boundary_limits.hpp"
#include "tubegeo/gromov.hpp"
#include "tubegeo/hilbert.hpp"
#include "tubegeo/reference_models.hpp"
#include "tubegeo/solver.hpp"

namespace tubegeo {

using Json = nlohmann::ordered_json;

inline std::string format_number(double v) {
  char buf[48];
  const std::to_chars_result res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline double round_sig(double v) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_number(v);
  double out = v;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

// 64-bit FNV-1a of the canonical configuration line, as 16 hex digits.
inline std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : canonical) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 16);
}

inline const char* report_label(FCaseLabel label) {
  switch (label) {
    case FCaseLabel::kCircleEmbedding:
      return "CIRCLE_EMBEDDING";
    case FCaseLabel::kSmallArc:
      return "SMALL_ARC";
    case FCaseLabel::kOpenSemicircle:
      return "OPEN_SEMICIRCLE";
    case FCaseLabel::kTwoAntipodalValues:
      return "TWO_ANTIPODAL_VALUES";
  }
  return "UNKNOWN";
}

inline const char* provenance_name(DistanceProvenance p) {
  switch (p) {
    case DistanceProvenance::kExactModel:
      return "exact_model";
    case DistanceProvenance::kSolver:
      return "solver";
    case DistanceProvenance::kBoundsPair:
      return "bounds_pair";
  }
  return "unknown";
}

inline Json json_vec(const Vec& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(round_sig(v[i]));
  return a;
}

inline Json json_cvec(const CVec& v) {
  Json j;
  j["re"] = json_vec(v.real());
  j["im"] = json_vec(v.imag());
  return j;
}

inline Json to_json(const GeodesicParams& p) {
  Json j;
  j["a"] = json_cvec(p.a);
  j["b"] = json_vec(p.b);
  j["im_f0"] = json_vec(p.im_f0);
  return j;
}

inline Json to_json(const VerifyReport& r) {
  Json j;
  j["max_boundary_defect"] = round_sig(r.max_boundary_defect);
  j["max_alignment_error"] = round_sig(r.max_alignment_error);
  j["max_interior_rho"] = round_sig(r.max_interior_rho);
  j["residual_w"] = round_sig(r.residual_w);
  j["residual_z"] = round_sig(r.residual_z);
  j["boundary_ok"] = r.boundary_ok;
  j["alignment_ok"] = r.alignment_ok;
  j["interior_ok"] = r.interior_ok;
  j["endpoints_ok"] = r.endpoints_ok;
  j["pass"] = r.pass;
  return j;
}

inline Json to_json(const SingularAngleReport& r) {
  Json j;
  j["angle"] = round_sig(r.angle);
  j["x_before"] = json_vec(r.x_before);
  j["x_after"] = json_vec(r.x_after);
  j["re_radial_limit"] = json_vec(r.re_radial_limit);
  j["re_segment_distance"] = round_sig(r.re_segment_distance);
  j["dominant_component"] = static_cast<int>(r.dominant);
  j["im_sign"] = round_sig(r.im_sign);
  j["im_monotone"] = r.im_monotone;
  j["im_max_abs"] = round_sig(r.im_max_abs);
  j["im_crossed_threshold"] = r.im_crossed_threshold;
  return j;
}

inline Json to_json(const BoundaryLimitReport& r) {
  Json j;
  j["label"] = report_label(r.label);
  j["continuous"] = r.continuous;
  if (r.continuous) {
    j["max_boundary_defect"] = round_sig(r.max_boundary_defect);
    j["max_profile_mismatch"] = round_sig(r.max_profile_mismatch);
  }
  Json sing = Json::array();
  for (const SingularAngleReport& s : r.singular) sing.push_back(to_json(s));
  j["singular"] = sing;
  return j;
}

// Trace serialization: parameters, case label, residuals, and curve samples
// f(t) on a uniform open grid over the real diameter (-1, 1).
inline Json trace_json(const GeodesicTrace& t, Index grid = 33) {
  Json j;
  j["label"] = report_label(t.label());
  if (!t.boundary_pair) {
    j["s"] = round_sig(t.s);
    j["kobayashi"] = round_sig(atanh_stable(t.s));
  }
  j["boundary_pair"] = t.boundary_pair;
  j["real_pair"] = t.real_pair;
  j["residual_w"] = round_sig(t.residual_w);
  j["residual_z"] = round_sig(t.residual_z);
  j["params"] = to_json(t.params);
  Json sing = Json::array();
  for (double a : t.profile.singular_angles) sing.push_back(round_sig(a));
  j["singular_angles"] = sing;

  Json curve = Json::array();
  for (Index i = 0; i < grid; ++i) {
    const double lam = -1.0 + 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
    const CVec f = (*t.evaluator)(Complex(lam, 0.0));
    Json row;
    row["t"] = round_sig(lam);
    row["re"] = json_vec(f.real());
    row["im"] = json_vec(f.imag());
    curve.push_back(row);
  }
  j["curve"] = curve;
  return j;
}

inline Json to_json(const QuadrupleReport& q) {
  Json j;
  if (q.step > 0) j["step"] = q.step;
  if (std::isfinite(q.parameter)) j["parameter"] = round_sig(q.parameter);
  Json pts = Json::array();
  for (const CVec& p : q.points) pts.push_back(json_cvec(p));
  j["points"] = pts;
  Json lo = Json::array(), hi = Json::array();
  for (double d : q.dist_low) lo.push_back(round_sig(d));
  for (double d : q.dist_high) hi.push_back(round_sig(d));
  j["dist_low"] = lo;
  j["dist_high"] = hi;
  j["s_low"] = round_sig(q.s_low);
  j["s_high"] = round_sig(q.s_high);
  j["provenance"] = provenance_name(q.provenance);
  return j;
}

inline Json to_json(const WitnessSearchResult& r) {
  Json j;
  j["best_s"] = round_sig(r.best_s);
  j["target"] = round_sig(r.target);
  j["achieved"] = r.achieved;
  j["exhausted"] = r.exhausted;
  j["seed"] = r.seed;
  Json entries = Json::array();
  for (const QuadrupleReport& q : r.entries) entries.push_back(to_json(q));
  j["entries"] = entries;
  return j;
}

inline Json to_json(const BlowupReport& r) {
  Json j;
  j["first_box_inside"] = r.first_box_inside;
  j["gap_at_final"] = round_sig(r.gap_at_final);
  j["max_scaling_defect"] = round_sig(r.max_scaling_defect);
  Json stages = Json::array();
  for (const BlowupStage& s : r.stages) {
    Json row;
    row["k"] = s.k;
    row["t"] = round_sig(s.t);
    row["box_inside"] = s.box_inside;
    row["inside_cone"] = s.inside_cone;
    Json gaps = Json::array();
    for (double g : s.pair_gap) gaps.push_back(round_sig(g));
    row["pair_gap"] = gaps;
    row["scaling_defect"] = round_sig(s.scaling_defect);
    stages.push_back(row);
  }
  j["stages"] = stages;
  return j;
}

inline Json to_json(const HilbertCheckReport& r) {
  Json j;
  j["pairs"] = r.pairs;
  j["converged"] = r.converged;
  j["min_slack"] = round_sig(r.min_slack);
  j["max_slack"] = round_sig(r.max_slack);
  j["max_h"] = round_sig(r.max_h);
  j["max_k"] = round_sig(r.max_k);
  j["pass"] = r.pass;
  return j;
}

inline Json to_json(const UniquenessReport& r) {
  Json j;
  j["requested"] = r.requested;
  j["converged"] = r.converged;
  j["max_profile_deviation"] = round_sig(r.max_profile_deviation);
  j["max_im_on_reals"] = round_sig(r.max_im_on_reals);
  j["max_symmetrization_defect"] = round_sig(r.max_symmetrization_defect);
  j["real_pair"] = r.real_pair;
  return j;
}

inline Json to_json(const SiegelReport& r) {
  Json j;
  j["triples"] = r.triples;
  j["skipped"] = r.skipped;
  j["image_in_domain"] = r.image_in_domain;
  j["min_image_margin"] = round_sig(r.min_image_margin);
  j["max_axiom_defect"] = round_sig(r.max_axiom_defect);
  j["max_slice_defect"] = round_sig(r.max_slice_defect);
  j["max_affine_gap"] = round_sig(r.max_affine_gap);
  j["max_translation_defect"] = round_sig(r.max_translation_defect);
  j["pass"] = r.pass;
  return j;
}

inline Json to_json(const Example2Report& r) {
  Json j;
  j["samples"] = r.samples;
  j["in_bidisc"] = r.in_bidisc;
  j["inequality_pass"] = r.inequality_pass;
  j["member_pass"] = r.member_pass;
  j["involution_pass"] = r.involution_pass;
  j["midpoint_pass"] = r.midpoint_pass;
  j["equivalence_pass"] = r.equivalence_pass;
  j["equivalence_total"] = r.equivalence_total;
  j["boundary_pass"] = r.boundary_pass;
  j["boundary_total"] = r.boundary_total;
  j["max_involution_defect"] = round_sig(r.max_involution_defect);
  j["max_boundary_defect"] = round_sig(r.max_boundary_defect);
  j["printed_variant"] = r.printed_variant;
  j["pass"] = r.pass;
  return j;
}

// Schedule CSV: one row per record-setting quadruple, flattened witness
// coordinates, '#'-prefixed header lines carrying the run configuration.
inline std::string witness_schedule_csv(const WitnessSearchResult& r,
                                        const std::vector<std::string>& header_lines) {
  std::string out;
  for (const std::string& line : header_lines) out += "# " + line + "\n";
  const Index n = r.entries.empty() ? 0 : r.entries.front().points[0].size();
  out += "step,parameter,S,S_high";
  for (int p = 1; p <= 4; ++p)
    for (Index i = 1; i <= n; ++i) {
      out += ",p" + std::to_string(p) + "_re" + std::to_string(i);
      out += ",p" + std::to_string(p) + "_im" + std::to_string(i);
    }
  out += "\n";
  for (const QuadrupleReport& q : r.entries) {
    out += std::to_string(q.step) + "," + format_number(q.parameter) + "," +
           format_number(q.s_low) + "," + format_number(q.s_high);
    for (const CVec& pt : q.points)
      for (Index i = 0; i < pt.size(); ++i) {
        out += "," + format_number(pt[i].real());
        out += "," + format_number(pt[i].imag());
      }
    out += "\n";
  }
  return out;
}

}  // namespace tubegeo
