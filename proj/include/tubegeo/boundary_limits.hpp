#pragma once

// Boundary behaviour of a geodesic: either Re f extends continuously to the
// circle with values on the boundary of the base, or there are one or two
// singular angles where the real part has one-sided limits on the boundary, a
// radial limit inside the segment between them, and logarithmically divergent
// imaginary part. The radial real limit is estimated by Richardson
// extrapolation with the model L + c1 (1-r) log(1-r) + c2 (1-r) on the coarse
// radius schedule, then refined at deeper radii until stable.

#include <algorithm>
#include <cmath>
#include <vector>

#include "tubegeo/schwarz.hpp"

namespace tubegeo {

struct LimitOptions {
  std::vector<double> radii = {0.9, 0.99, 0.999, 0.9999};  // coarse probe schedule
  double divergence_threshold = 50.0;  // |Im f| a diverging component must cross
  Index grid = 256;                    // circle grid for the continuous-case checks
  double r_check = 1.0 - 1e-7;         // radius for the continuous-case checks
  int max_depth_exponent = 16;         // deepest probe radius 1 - 10^-k for divergence
};

struct RadialProbe {
  double r = 0.0;
  Vec re, im;
};

struct SingularAngleReport {
  double angle = 0.0;
  Vec x_before, x_after;  // one-sided limits of g
  Vec jump;               // x_after - x_before
  Vec re_radial_limit;
  double re_segment_distance = 0.0;  // distance of the radial limit to [x_before, x_after]
  Index dominant = 0;                // component with the largest jump
  double im_sign = 0.0;              // observed sign of the diverging component
  bool im_monotone = false;
  double im_max_abs = 0.0;
  bool im_crossed_threshold = false;
  std::vector<RadialProbe> probes;
};

struct BoundaryLimitReport {
  FCaseLabel label = FCaseLabel::kCircleEmbedding;
  bool continuous = true;
  double max_boundary_defect = 0.0;   // max |rho(Re f(r_check e^{it}))| over the grid
  double max_profile_mismatch = 0.0;  // max |Re f(r_check e^{it}) - g(t)| over the grid
  std::vector<SingularAngleReport> singular;
};

namespace detail {

// Least-squares fit of v(r) ~ L + c1 (1-r) log(1-r) + c2 (1-r); returns L.
inline Vec radial_fit(const std::vector<RadialProbe>& probes) {
  const Index m = static_cast<Index>(probes.size());
  const Index n = probes.front().re.size();
  Mat A(m, 3);
  Mat rhs(m, n);
  for (Index i = 0; i < m; ++i) {
    const double u = 1.0 - probes[static_cast<size_t>(i)].r;
    A(i, 0) = 1.0;
    A(i, 1) = u * std::log(u);
    A(i, 2) = u;
    rhs.row(i) = probes[static_cast<size_t>(i)].re.transpose();
  }
  const Mat sol = A.colPivHouseholderQr().solve(rhs);
  return sol.row(0).transpose();
}

inline double segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double den = ab.squaredNorm();
  const double s = den > 0.0 ? std::clamp((p - a).dot(ab) / den, 0.0, 1.0) : 0.0;
  return (p - (a + s * ab)).norm();
}

}  // namespace detail

inline BoundaryLimitReport boundary_limits(const BaseDomain& dom, const GeodesicEvaluator& f,
                                           LimitOptions opts = {}) {
  BoundaryLimitReport rep;
  rep.label = f.label();
  const std::vector<double>& sing = f.singular_angles();
  rep.continuous = sing.empty();

  if (rep.continuous) {
    for (Index j = 0; j < opts.grid; ++j) {
      const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(opts.grid);
      const CVec fv = f(Complex(opts.r_check * std::cos(t), opts.r_check * std::sin(t)));
      const Vec re = fv.real();
      rep.max_boundary_defect = std::max(rep.max_boundary_defect, std::abs(dom.rho(re)));
      rep.max_profile_mismatch = std::max(rep.max_profile_mismatch, (re - f.boundary_value(t)).norm());
    }
    return rep;
  }

  for (size_t m = 0; m < sing.size(); ++m) {
    SingularAngleReport sr;
    sr.angle = sing[m];

    if (f.piecewise_constant()) {
      // angle 0 opens the x_plus arc, angle 1 closes it.
      sr.x_before = (m == 0) ? f.x_minus() : f.x_plus();
      sr.x_after = (m == 0) ? f.x_plus() : f.x_minus();
    } else {
      // One-sided limits of g by linear extrapolation in the offset.
      const double d = 1e-5;
      sr.x_after = 2.0 * f.boundary_value(sr.angle + d) - f.boundary_value(sr.angle + 2.0 * d);
      sr.x_before = 2.0 * f.boundary_value(sr.angle - d) - f.boundary_value(sr.angle - 2.0 * d);
    }
    sr.jump = sr.x_after - sr.x_before;
    sr.jump.cwiseAbs().maxCoeff(&sr.dominant);

    const Complex dir(std::cos(sr.angle), std::sin(sr.angle));
    auto probe = [&](double r) {
      const CVec fv = f(r * dir);
      sr.probes.push_back({r, fv.real(), fv.imag()});
    };
    for (double r : opts.radii) probe(r);

    // Coarse Richardson estimate, then deeper radii until the fit stabilizes.
    Vec limit = detail::radial_fit(sr.probes);
    for (int k = 5; k <= 10; ++k) {
      probe(1.0 - std::pow(10.0, -k));
      const auto tail_len = std::min<std::ptrdiff_t>(4, static_cast<std::ptrdiff_t>(sr.probes.size()));
      const Vec next = detail::radial_fit({sr.probes.end() - tail_len, sr.probes.end()});
      if ((next - limit).norm() < 1e-8) {
        limit = next;
        break;
      }
      limit = next;
    }
    sr.re_radial_limit = limit;
    sr.re_segment_distance = detail::segment_distance(limit, sr.x_before, sr.x_after);

    // Divergence of the dominant imaginary component: strict growth along the probes
    // and an actual crossing of the threshold at some evaluated radius.
    sr.im_monotone = true;
    double prev = -1.0;
    for (const RadialProbe& p : sr.probes) {
      const double v = std::abs(p.im[sr.dominant]);
      if (v <= prev) sr.im_monotone = false;
      prev = v;
      sr.im_max_abs = std::max(sr.im_max_abs, v);
    }
    for (int k = 11; sr.im_max_abs < opts.divergence_threshold && k <= opts.max_depth_exponent; ++k) {
      if (!f.piecewise_constant() && k > 12) break;  // quadrature floor for non-exact paths
      const double r = 1.0 - std::pow(10.0, -k);
      if (!(r < 1.0) || r <= sr.probes.back().r) break;  // double resolution exhausted
      probe(r);
      const double v = std::abs(sr.probes.back().im[sr.dominant]);
      if (v <= prev) sr.im_monotone = false;
      prev = v;
      sr.im_max_abs = std::max(sr.im_max_abs, v);
    }
    sr.im_crossed_threshold = sr.im_monotone && sr.im_max_abs >= opts.divergence_threshold;
    sr.im_sign = sr.probes.back().im[sr.dominant] >= 0.0 ? 1.0 : -1.0;
    rep.singular.push_back(std::move(sr));
  }
  return rep;
}

}  // namespace tubegeo
