#pragma once

// Boundary data of complex geodesics in tube domains.
//
// A geodesic of T_Omega is determined by a parameter pair (a, b), a in C^n,
// b in R^n, not both zero, through the quadratic h(lambda) = a lambda^2 +
// b lambda + conj(a). On the unit circle F~(t) = e^{-it} h(e^{it}) =
// 2 Re(a e^{it}) + b is a real vector field; wherever it does not vanish its
// direction F = F~/|F~| selects the boundary point g(t) of the base with
// outward normal F(t), and the geodesic is the Schwarz integral of g. The
// image of F falls into exactly four shapes, classified here; the zeros of F~
// ("singular angles", at most two) are where g may jump.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "tubegeo/base_domain.hpp"
#include "tubegeo/types.hpp"

namespace tubegeo {

enum class FCaseLabel { kCircleEmbedding, kSmallArc, kOpenSemicircle, kTwoAntipodalValues };

inline const char* to_string(FCaseLabel label) {
  switch (label) {
    case FCaseLabel::kCircleEmbedding:
      return "circle_embedding";
    case FCaseLabel::kSmallArc:
      return "small_arc";
    case FCaseLabel::kOpenSemicircle:
      return "open_semicircle";
    case FCaseLabel::kTwoAntipodalValues:
      return "two_antipodal_values";
  }
  return "unknown";
}

// Gauge-normalized boundary data: |a|^2 + |b|^2 = 1 (positive rescaling of
// (a, b) leaves the geodesic unchanged). im_f0 is the imaginary part of f(0),
// the free translation in the fiber direction. Construct through make_params.
struct GeodesicParams {
  CVec a;
  Vec b;
  Vec im_f0;

  Index dim() const { return b.size(); }
};

inline CVec h_poly(const GeodesicParams& p, Complex lambda) {
  return p.a * (lambda * lambda) + p.b.cast<Complex>() * lambda + p.a.conjugate();
}

// F~(t) = e^{-it} h(e^{it}) = 2 Re(a e^{it}) + b; real for all t.
inline Vec f_tilde(const GeodesicParams& p, double t) {
  return 2.0 * (std::cos(t) * p.a.real() - std::sin(t) * p.a.imag()) + p.b;
}

// d/dt F~(t) = -2 Im(a e^{it}).
inline Vec f_tilde_deriv(const GeodesicParams& p, double t) {
  return -2.0 * (std::sin(t) * p.a.real() + std::cos(t) * p.a.imag());
}

namespace detail {

inline double wrap_angle(double t) {
  t = std::fmod(t, 2.0 * kPi);
  return t < 0.0 ? t + 2.0 * kPi : t;
}

// Orthonormal basis of span{Re a, Im a} and the rank (tolerance on the second
// singular value; params are gauge-normalized so absolute tolerances apply).
inline Index direction_plane(const GeodesicParams& p, Mat* basis = nullptr) {
  Mat PQ(p.dim(), 2);
  PQ.col(0) = p.a.real();
  PQ.col(1) = p.a.imag();
  Eigen::JacobiSVD<Mat> svd(PQ, Eigen::ComputeThinU);
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-12) ++rank;
  if (basis) *basis = svd.matrixU().leftCols(std::max<Index>(rank, 1));
  return rank;
}

}  // namespace detail

// Zeros of F~ on [0, 2pi), sorted. There are at most two. Any zero is a root of
// every component quadratic h_j; the largest-coefficient component supplies the
// candidates (h_j is self-inversive: b_j real and trailing coefficient conj(a_j),
// so its discriminant b_j^2 - 4 |a_j|^2 is real and negative discriminants put
// both roots exactly on the circle). Candidates are polished by Gauss-Newton on
// |F~|^2 and filtered on the full vector.
inline std::vector<double> singular_points(const GeodesicParams& p) {
  Index j = 0;
  double best = -1.0;
  for (Index i = 0; i < p.dim(); ++i) {
    const double m = std::max(std::abs(p.a[i]), std::abs(p.b[i]));
    if (m > best) {
      best = m;
      j = i;
    }
  }
  std::vector<double> candidates;
  const Complex aj = p.a[j];
  const double bj = p.b[j];
  if (std::abs(aj) < 1e-15) return {};  // h_j = b_j lambda, root at 0: F~ never vanishes on the circle
  const double disc = bj * bj - 4.0 * std::norm(aj);
  const Complex sq = std::sqrt(Complex(disc, 0.0));
  const Complex q = -0.5 * (bj + (bj >= 0.0 ? sq : -sq));
  const Complex r1 = q / aj;
  const Complex r2 = std::abs(q) > 0.0 ? std::conj(aj) / q : Complex(0.0);
  for (const Complex& r : {r1, r2})
    if (std::abs(std::abs(r) - 1.0) < 1e-6) candidates.push_back(std::arg(r));

  std::vector<double> out;
  for (double t : candidates) {
    for (int it = 0; it < 8; ++it) {  // Gauss-Newton on |F~(t)|^2 / 2
      const Vec v = f_tilde(p, t);
      const Vec dv = f_tilde_deriv(p, t);
      const double den = dv.squaredNorm();
      if (den < 1e-30) break;
      t -= v.dot(dv) / den;
    }
    t = detail::wrap_angle(t);
    if (f_tilde(p, t).norm() > 1e-10) continue;
    bool dup = false;
    for (double s : out)
      if (std::abs(s - t) < 1e-8 || std::abs(std::abs(s - t) - 2.0 * kPi) < 1e-8) dup = true;
    if (!dup) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Validating constructor for boundary data. Rejects the degenerate
// configurations excluded from the parametrization: a = 0 (constant direction
// map) and collinear data b = beta d, a = alpha d with |beta| >= 2|alpha|
// (constant direction, or a segment tangent to the origin at an endpoint).
inline GeodesicParams make_params(CVec a, Vec b, Vec im_f0 = Vec()) {
  if (a.size() != b.size() || a.size() < 1) throw ArgumentError("make_params: size mismatch");
  if (im_f0.size() == 0) im_f0 = Vec::Zero(a.size());
  if (im_f0.size() != a.size()) throw ArgumentError("make_params: im_f0 size mismatch");
  const double scale = std::sqrt(a.squaredNorm() + b.squaredNorm());
  if (!(scale > 0.0)) throw ArgumentError("make_params: a and b both zero");
  GeodesicParams p{std::move(a), std::move(b), std::move(im_f0)};
  p.a /= scale;
  p.b /= scale;

  if (p.a.norm() <= 1e-13) throw DegenerateParamsError("boundary data: constant direction map (a = 0)");
  Mat basis;
  const Index rank = detail::direction_plane(p, &basis);
  if (rank <= 1) {
    const Vec d = basis.col(0);
    const double beta = p.b.dot(d);
    const Vec b_perp = p.b - beta * d;
    const double amp = 2.0 * p.a.norm();
    if (b_perp.norm() <= 1e-12) {
      if (std::abs(beta) >= amp - 1e-12)
        throw DegenerateParamsError(
            std::abs(beta) > amp + 1e-12
                ? "boundary data: constant direction map (segment misses the origin on one side)"
                : "boundary data: segment endpoint tangency");
    }
  }
  return p;
}

// Shape of the direction map F on the circle minus its zeros.
//
// No zeros: F embeds the circle when the image ellipse of F~ spans a plane
// missing the origin, or contains the origin strictly inside; it sweeps a
// closed arc smaller than a half-circle otherwise (segment image, or in-plane
// origin outside the ellipse). One zero: open half-circle. Two zeros: two
// antipodal values. A dense scan cross-checks the zero count.
inline FCaseLabel classify_case(const GeodesicParams& p) {
  const std::vector<double> sing = singular_points(p);

  double grid_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 1024; ++k) {
    const double t = 2.0 * kPi * k / 1024.0;
    double dist_to_sing = std::numeric_limits<double>::infinity();
    for (double s : sing) {
      const double d = std::abs(detail::wrap_angle(t - s));
      dist_to_sing = std::min({dist_to_sing, d, 2.0 * kPi - d});
    }
    if (dist_to_sing > 1e-3) grid_min = std::min(grid_min, f_tilde(p, t).norm());
  }
  if (sing.empty() && grid_min < 1e-11)
    throw NumericError("classify_case: scan found a zero the root solver missed", grid_min);

  Mat basis;
  const Index rank = detail::direction_plane(p, &basis);
  switch (sing.size()) {
    case 2:
      if (rank > 1)
        throw NumericError("classify_case: numerically tangent configuration (two zeros, planar data)",
                           grid_min);
      return FCaseLabel::kTwoAntipodalValues;
    case 1:
      if (rank <= 1)
        throw NumericError("classify_case: numerically tangent configuration (one zero, segment data)",
                           grid_min);
      return FCaseLabel::kOpenSemicircle;
    case 0:
      break;
    default:
      throw NumericError("classify_case: more than two zeros reported", static_cast<double>(sing.size()));
  }

  if (rank <= 1) return FCaseLabel::kSmallArc;
  // Solve 2 Re(a e^{it}) = -b in the plane: B (c, s)^T = -b with B = [2 Re a, -2 Im a].
  Mat B(p.dim(), 2);
  B.col(0) = 2.0 * p.a.real();
  B.col(1) = -2.0 * p.a.imag();
  const Eigen::Vector2d cs = B.colPivHouseholderQr().solve(-p.b);
  const double residual = (B * cs + p.b).norm();
  if (residual > 1e-9) return FCaseLabel::kCircleEmbedding;  // plane misses the origin
  return cs.squaredNorm() < 1.0 ? FCaseLabel::kCircleEmbedding : FCaseLabel::kSmallArc;
}

// Sampled boundary data of a geodesic: g(t_j) = support point of Omega in the
// direction F(t_j) on the uniform grid t_j = 2 pi j / M, with singular angles
// carrying no value. Profiles built from raw samples (or explicit two-arc data)
// feed the Schwarz integral in tests and serialization.
struct BoundaryProfile {
  Index grid_m = 0;
  FCaseLabel label = FCaseLabel::kCircleEmbedding;
  std::vector<double> singular_angles;
  std::vector<bool> has_value;  // size grid_m
  Mat values;                   // n x grid_m; column j meaningful iff has_value[j]

  // Exact arc data for piecewise-constant profiles (two antipodal values):
  // value x_plus on (singular_angles[0], singular_angles[1]), x_minus on the
  // complementary arc.
  bool piecewise_constant = false;
  Vec x_plus, x_minus;

  // Optional exact sampler g(t) for off-grid quadrature (set when the profile
  // was built from a domain and parameters).
  std::function<Vec(double)> sampler;

  double angle(Index j) const { return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid_m); }
  Index dim() const { return values.rows(); }

  static BoundaryProfile from_samples(Mat values_by_column, FCaseLabel label = FCaseLabel::kCircleEmbedding) {
    BoundaryProfile bp;
    bp.grid_m = values_by_column.cols();
    bp.label = label;
    bp.values = std::move(values_by_column);
    bp.has_value.assign(static_cast<size_t>(bp.grid_m), true);
    return bp;
  }

  static BoundaryProfile from_two_arcs(double theta0, double theta1, Vec x_plus, Vec x_minus,
                                       Index grid_m = 1024) {
    if (!(theta1 > theta0)) throw ArgumentError("from_two_arcs: need theta0 < theta1");
    BoundaryProfile bp;
    bp.grid_m = grid_m;
    bp.label = FCaseLabel::kTwoAntipodalValues;
    bp.singular_angles = {theta0, theta1};
    bp.piecewise_constant = true;
    bp.x_plus = std::move(x_plus);
    bp.x_minus = std::move(x_minus);
    bp.values.resize(bp.x_plus.size(), grid_m);
    bp.has_value.assign(static_cast<size_t>(grid_m), true);
    for (Index j = 0; j < grid_m; ++j) {
      const double t = bp.angle(j);
      const double d0 = std::min(std::abs(t - theta0), 2.0 * kPi - std::abs(t - theta0));
      const double d1 = std::min(std::abs(t - theta1), 2.0 * kPi - std::abs(t - theta1));
      if (std::min(d0, d1) < 1e-9) {
        bp.has_value[static_cast<size_t>(j)] = false;
        bp.values.col(j).setZero();
      } else {
        bp.values.col(j) = (t > theta0 && t < theta1) ? bp.x_plus : bp.x_minus;
      }
    }
    return bp;
  }
};

// Evaluates g on the grid: support points of the base in the directions F(t_j).
inline BoundaryProfile boundary_profile(const BaseDomain& dom, const GeodesicParams& p,
                                        Index grid_m = 1024) {
  if (grid_m < 64) throw ArgumentError("boundary_profile: grid must have at least 64 points");
  if (!dom.smooth() || !dom.bounded())
    throw DomainError("boundary_profile: base must be bounded with smooth boundary");
  if (p.dim() != dom.dim()) throw ArgumentError("boundary_profile: dimension mismatch");

  BoundaryProfile bp;
  bp.grid_m = grid_m;
  bp.label = classify_case(p);
  bp.singular_angles = singular_points(p);
  bp.values.resize(dom.dim(), grid_m);
  bp.has_value.assign(static_cast<size_t>(grid_m), true);
  BaseDomain dom_copy = dom;
  GeodesicParams params = p;
  bp.sampler = [dom_copy, params](double t) { return support_point(dom_copy, f_tilde(params, t)); };

  if (bp.label == FCaseLabel::kTwoAntipodalValues) {
    const double t0 = bp.singular_angles[0], t1 = bp.singular_angles[1];
    bp.piecewise_constant = true;
    bp.x_plus = support_point(dom, f_tilde(p, 0.5 * (t0 + t1)));
    bp.x_minus = support_point(dom, f_tilde(p, detail::wrap_angle(0.5 * (t0 + t1) + kPi)));
  }

  for (Index j = 0; j < grid_m; ++j) {
    const double t = bp.angle(j);
    const Vec v = f_tilde(p, t);
    if (v.norm() < 1e-9) {
      bp.has_value[static_cast<size_t>(j)] = false;
      bp.values.col(j).setZero();
      continue;
    }
    if (bp.piecewise_constant) {
      bp.values.col(j) = (t > bp.singular_angles[0] && t < bp.singular_angles[1]) ? bp.x_plus : bp.x_minus;
    } else {
      bp.values.col(j) = support_point(dom, v);
    }
  }
  return bp;
}

}  // namespace tubegeo
