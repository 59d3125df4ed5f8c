#pragma once

// Base domains Omega subset R^n for tube domains T_Omega = {Re z in Omega}.
//
// A BaseDomain is an immutable value: a convex defining function rho with
// rho < 0 inside, rho = 0 on the boundary, rho > 0 outside, together with its
// gradient, a designated interior point and a bounding radius. Catalog kinds
// (ball, ellipsoid, superellipse) carry closed forms for the support map; the
// generic smooth kind falls back to a Lagrange-Newton solve. Polytopes and
// interval products are supported for the operations that do not require a
// smooth boundary (membership, ray exits, Hilbert-metric chords).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "tubegeo/types.hpp"

namespace tubegeo {

enum class DomainKind {
  kBall,
  kEllipsoid,
  kSuperellipse,
  kCustomSmooth,
  kPolytope,
  kIntervalProduct,
  kParaboloid,
};

// Closure of the image <Omega, u>; endpoints may be +-infinity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

class BaseDomain {
 public:
  using DefiningFn = std::function<double(const Vec&)>;
  using GradientFn = std::function<Vec(const Vec&)>;

  static BaseDomain ball(Index n, double radius = 1.0) {
    if (n < 1 || !(radius > 0.0)) throw ArgumentError("ball: need n >= 1 and radius > 0");
    BaseDomain d;
    d.kind_ = DomainKind::kBall;
    d.n_ = n;
    d.axes_ = Vec::Constant(n, radius);
    d.interior_ = Vec::Zero(n);
    d.radius_ = radius;
    return d;
  }

  static BaseDomain ellipsoid(const Vec& semi_axes) {
    if (semi_axes.size() < 1 || semi_axes.minCoeff() <= 0.0)
      throw ArgumentError("ellipsoid: semi-axes must be positive");
    BaseDomain d;
    d.kind_ = DomainKind::kEllipsoid;
    d.n_ = semi_axes.size();
    d.axes_ = semi_axes;
    d.interior_ = Vec::Zero(d.n_);
    d.radius_ = semi_axes.maxCoeff();
    return d;
  }

  // sum_i |x_i / a_i|^p < 1 with p >= 2 (C^1 defining function, strictly convex).
  static BaseDomain superellipse(const Vec& semi_axes, double exponent) {
    if (semi_axes.size() < 1 || semi_axes.minCoeff() <= 0.0)
      throw ArgumentError("superellipse: semi-axes must be positive");
    if (!(exponent >= 2.0)) throw ArgumentError("superellipse: exponent must be >= 2");
    BaseDomain d;
    d.kind_ = DomainKind::kSuperellipse;
    d.n_ = semi_axes.size();
    d.axes_ = semi_axes;
    d.exponent_ = exponent;
    d.interior_ = Vec::Zero(d.n_);
    d.radius_ = semi_axes.norm();
    return d;
  }

  static BaseDomain custom_smooth(Index n, DefiningFn rho, GradientFn grad, Vec interior_point,
                                  double bounding_radius) {
    if (n < 1 || !rho || !grad) throw ArgumentError("custom_smooth: need n >= 1 and callable rho, grad");
    if (interior_point.size() != n) throw ArgumentError("custom_smooth: interior point has wrong size");
    if (!(bounding_radius > 0.0)) throw ArgumentError("custom_smooth: bounding radius must be positive");
    BaseDomain d;
    d.kind_ = DomainKind::kCustomSmooth;
    d.n_ = n;
    d.rho_ = std::move(rho);
    d.grad_ = std::move(grad);
    d.interior_ = std::move(interior_point);
    d.radius_ = bounding_radius;
    if (!(d.rho(d.interior_) < 0.0)) throw ArgumentError("custom_smooth: interior point is not interior");
    return d;
  }

  // Intersection of half-spaces <u_i, x> < c_i; rows of `normals` are u_i.
  static BaseDomain polytope(const Mat& normals, const Vec& offsets, const Vec& interior_point) {
    if (normals.rows() < 1 || normals.rows() != offsets.size())
      throw ArgumentError("polytope: need one offset per half-space");
    if (normals.cols() != interior_point.size())
      throw ArgumentError("polytope: interior point has wrong size");
    BaseDomain d;
    d.kind_ = DomainKind::kPolytope;
    d.n_ = normals.cols();
    d.normals_ = normals;
    d.offsets_ = offsets;
    for (Index i = 0; i < normals.rows(); ++i) {
      const double s = normals.row(i).norm();
      if (!(s > 0.0)) throw ArgumentError("polytope: zero normal");
      d.normals_.row(i) /= s;
      d.offsets_[i] /= s;
    }
    d.interior_ = interior_point;
    if (!(d.rho(interior_point) < 0.0)) throw ArgumentError("polytope: interior point is not interior");
    // Treated as possibly unbounded; ray exits use the half-space closed form, so no
    // enclosing radius is required. interval_product overrides this with the box radius.
    d.radius_ = std::numeric_limits<double>::infinity();
    return d;
  }

  static BaseDomain interval_product(const Vec& lo, const Vec& hi) {
    if (lo.size() != hi.size() || lo.size() < 1) throw ArgumentError("interval_product: size mismatch");
    if (((hi - lo).array() <= 0.0).any()) throw ArgumentError("interval_product: need lo < hi");
    const Index n = lo.size();
    Mat normals(2 * n, n);
    Vec offsets(2 * n);
    normals.setZero();
    for (Index i = 0; i < n; ++i) {
      normals(2 * i, i) = 1.0;
      offsets[2 * i] = hi[i];
      normals(2 * i + 1, i) = -1.0;
      offsets[2 * i + 1] = -lo[i];
    }
    BaseDomain d = polytope(normals, offsets, 0.5 * (lo + hi));
    d.kind_ = DomainKind::kIntervalProduct;
    d.box_lo_ = lo;
    d.box_hi_ = hi;
    d.radius_ = std::max(lo.norm(), hi.norm());
    return d;
  }

  // {x in R^2 : x1 > x2^2}, the unbounded reference-model base.
  static BaseDomain paraboloid() {
    BaseDomain d;
    d.kind_ = DomainKind::kParaboloid;
    d.n_ = 2;
    d.interior_ = Vec{{1.0, 0.0}};
    d.radius_ = std::numeric_limits<double>::infinity();
    return d;
  }

  Index dim() const { return n_; }
  DomainKind kind() const { return kind_; }

  bool smooth() const {
    return kind_ != DomainKind::kPolytope && kind_ != DomainKind::kIntervalProduct;
  }
  bool bounded() const { return std::isfinite(radius_); }

  double rho(const Vec& x) const {
    check_size_(x);
    switch (kind_) {
      case DomainKind::kBall:
      case DomainKind::kEllipsoid:
        return (x.array() / axes_.array()).matrix().squaredNorm() - 1.0;
      case DomainKind::kSuperellipse:
        return (x.array() / axes_.array()).abs().pow(exponent_).sum() - 1.0;
      case DomainKind::kCustomSmooth:
        return rho_(x);
      case DomainKind::kPolytope:
      case DomainKind::kIntervalProduct:
        return (normals_ * x - offsets_).maxCoeff();
      case DomainKind::kParaboloid:
        return x[1] * x[1] - x[0];
    }
    return 0.0;
  }

  Vec grad(const Vec& x) const {
    check_size_(x);
    switch (kind_) {
      case DomainKind::kBall:
      case DomainKind::kEllipsoid:
        return 2.0 * (x.array() / axes_.array().square()).matrix();
      case DomainKind::kSuperellipse: {
        Vec g(n_);
        for (Index i = 0; i < n_; ++i) {
          const double t = std::abs(x[i]) / axes_[i];
          g[i] = exponent_ / axes_[i] * std::pow(t, exponent_ - 1.0) * (x[i] < 0.0 ? -1.0 : 1.0);
        }
        return g;
      }
      case DomainKind::kCustomSmooth:
        return grad_(x);
      case DomainKind::kPolytope:
      case DomainKind::kIntervalProduct: {
        Index i = 0;
        (normals_ * x - offsets_).maxCoeff(&i);
        return normals_.row(i).transpose();
      }
      case DomainKind::kParaboloid:
        return Vec{{-1.0, 2.0 * x[1]}};
    }
    return Vec::Zero(n_);
  }

  const Vec& interior_point() const { return interior_; }
  double bounding_radius() const { return radius_; }

  const Vec& semi_axes() const { return axes_; }
  double exponent() const { return exponent_; }
  const Mat& normals() const { return normals_; }
  const Vec& offsets() const { return offsets_; }
  const Vec& box_lo() const { return box_lo_; }
  const Vec& box_hi() const { return box_hi_; }

 private:
  void check_size_(const Vec& x) const {
    if (x.size() != n_) throw ArgumentError("point has wrong dimension for this domain");
  }

  DomainKind kind_ = DomainKind::kBall;
  Index n_ = 0;
  Vec axes_;
  double exponent_ = 2.0;
  DefiningFn rho_;
  GradientFn grad_;
  Mat normals_;
  Vec offsets_;
  Vec box_lo_, box_hi_;
  Vec interior_;
  double radius_ = 1.0;
};

inline bool contains(const BaseDomain& dom, const Vec& x, double margin = 0.0) {
  return dom.rho(x) < -margin;
}

// First exit parameter t* >= 0 of the ray x + t * d/|d|, so that x + t* d/|d| is a
// boundary point. Bracketing plus bisection, then one Newton polish.
inline double boundary_intersection(const BaseDomain& dom, const Vec& x, const Vec& d) {
  const double dn = d.norm();
  if (!(dn > 0.0)) throw ArgumentError("boundary_intersection: zero direction");
  if (!(dom.rho(x) < 0.0)) throw ArgumentError("boundary_intersection: start point is not interior");
  const Vec u = d / dn;

  if (dom.kind() == DomainKind::kPolytope || dom.kind() == DomainKind::kIntervalProduct) {
    double best = std::numeric_limits<double>::infinity();
    const Vec num = dom.offsets() - dom.normals() * x;
    const Vec den = dom.normals() * u;
    for (Index i = 0; i < den.size(); ++i)
      if (den[i] > 0.0) best = std::min(best, num[i] / den[i]);
    if (!std::isfinite(best)) throw DomainError("boundary_intersection: ray never exits the base");
    return best;
  }

  double hi = dom.bounded() ? (x.norm() + dom.bounding_radius() + 1.0) : 1.0;
  if (!dom.bounded()) {
    while (dom.rho(x + hi * u) <= 0.0) {
      hi *= 2.0;
      if (hi > 1e12) throw DomainError("boundary_intersection: ray never exits the base");
    }
  }
  double lo = 0.0;
  if (!(dom.rho(x + hi * u) > 0.0)) throw DomainError("boundary_intersection: bracketing failed");
  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (dom.rho(x + mid * u) < 0.0 ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  const double slope = dom.grad(x + t * u).dot(u);
  if (std::abs(slope) > 1e-12) t -= dom.rho(x + t * u) / slope;
  return std::clamp(t, lo, hi);
}

// Outward unit normal at a boundary point x (the Gauss map of the base).
inline Vec gauss_map(const BaseDomain& dom, const Vec& x, double boundary_tol = 1e-9) {
  if (!dom.smooth()) throw DomainError("gauss_map: base has no smooth boundary");
  if (std::abs(dom.rho(x)) > boundary_tol) throw DomainError("gauss_map: point is not on the boundary");
  const Vec g = dom.grad(x);
  const double gn = g.norm();
  if (!(gn > 0.0)) throw NumericError("gauss_map: vanishing gradient", gn);
  return g / gn;
}

namespace detail {

// Lagrange-Newton for the generic smooth support point: solve
// mu * grad rho(x) = v, rho(x) = 0, with a finite-difference Hessian of rho.
inline bool support_newton(const BaseDomain& dom, const Vec& v, Vec& x, double& mu) {
  const Index n = dom.dim();
  const double h = 1e-6 * std::max(1.0, x.norm());
  for (int it = 0; it < 60; ++it) {
    const Vec g = dom.grad(x);
    Vec r(n + 1);
    r.head(n) = mu * g - v;
    r[n] = dom.rho(x);
    if (r.head(n).norm() <= 1e-11 * std::max(1.0, v.norm()) && std::abs(r[n]) <= 1e-12) return true;
    Mat H(n, n);
    for (Index j = 0; j < n; ++j) {
      Vec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      H.col(j) = (dom.grad(xp) - dom.grad(xm)) / (2.0 * h);
    }
    H = 0.5 * (H + H.transpose()).eval();
    Mat J(n + 1, n + 1);
    J.topLeftCorner(n, n) = mu * H;
    J.topRightCorner(n, 1) = g;
    J.bottomLeftCorner(1, n) = g.transpose();
    J(n, n) = 0.0;
    const Vec step = J.colPivHouseholderQr().solve(-r);
    double alpha = 1.0;
    const double base = r.norm();
    for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
      Vec xc = x + alpha * step.head(n);
      const double mc = mu + alpha * step[n];
      Vec rc(n + 1);
      rc.head(n) = mc * dom.grad(xc) - v;
      rc[n] = dom.rho(xc);
      if (rc.norm() < (1.0 - 1e-4 * alpha) * base) {
        x = std::move(xc);
        mu = mc;
        break;
      }
      if (ls == 39) return false;
    }
  }
  return false;
}

// Derivative-free fallback: hill-climb the direction sphere, scoring a direction d by
// <exit point along d, v>. Convexity makes the score unimodal on great circles.
inline Vec support_climb(const BaseDomain& dom, const Vec& v) {
  const Index n = dom.dim();
  const Vec x0 = dom.interior_point();
  auto exit_point = [&](const Vec& d) { return (x0 + boundary_intersection(dom, x0, d) * d.normalized()).eval(); };
  auto score = [&](const Vec& d) { return exit_point(d).dot(v); };
  Vec d = v.normalized();
  double best = score(d);
  double step = 0.5;
  while (step > 1e-9) {
    bool improved = false;
    for (Index axis = 0; axis < n; ++axis)
      for (double s : {-1.0, 1.0}) {
        Vec cand = d;
        cand[axis] += s * step;
        cand.normalize();
        const double sc = score(cand);
        if (sc > best + 1e-15) {
          best = sc;
          d = cand;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return exit_point(d);
}

}  // namespace detail

// Support point: the unique boundary point where the outward normal is v/|v|
// (equivalently the argmax of <., v> over the closure). Closed forms for the catalog
// kinds; Lagrange-Newton with a hill-climbing fallback for generic smooth bases.
//
// Closed form for sum |x_i/a_i|^p = 1: with q = p/(p-1) and S = (sum (a_i |v_i|)^q)^(1/q),
// the maximizer is x_i = sign(v_i) a_i (a_i |v_i| / S)^(q-1); p = 2 recovers the
// ellipsoid formula x = diag(a)^2 v / S.
inline Vec support_point(const BaseDomain& dom, const Vec& v) {
  if (!dom.smooth()) throw DomainError("support_point: base has no smooth boundary");
  if (!dom.bounded()) throw DomainError("support_point: base is unbounded");
  if (v.size() != dom.dim()) throw ArgumentError("support_point: direction has wrong dimension");
  const double vn = v.norm();
  if (!(vn > 0.0)) throw ArgumentError("support_point: zero direction");

  switch (dom.kind()) {
    case DomainKind::kBall:
    case DomainKind::kEllipsoid: {
      const Vec w = dom.semi_axes().array().square() * v.array();
      return w / std::sqrt(w.dot(v));
    }
    case DomainKind::kSuperellipse: {
      const double p = dom.exponent();
      const double q = p / (p - 1.0);
      const Vec av = dom.semi_axes().array() * v.array().abs();
      const double S = std::pow(av.array().pow(q).sum(), 1.0 / q);
      Vec x(dom.dim());
      for (Index i = 0; i < dom.dim(); ++i)
        x[i] = (v[i] < 0.0 ? -1.0 : 1.0) * dom.semi_axes()[i] * std::pow(av[i] / S, q - 1.0);
      return x;
    }
    default: {
      const Vec u = v / vn;
      Vec x = dom.interior_point() + boundary_intersection(dom, dom.interior_point(), u) * u;
      double mu = vn / std::max(dom.grad(x).norm(), 1e-300);
      if (detail::support_newton(dom, v, x, mu)) return x;
      x = detail::support_climb(dom, v);
      const Vec nrm = gauss_map(dom, x, 1e-7);
      if (nrm.dot(u) < 1.0 - 1e-8)
        throw NumericError("support_point: failed to align normal", 1.0 - nrm.dot(u));
      return x;
    }
  }
}

inline double support_value(const BaseDomain& dom, const Vec& v) {
  return support_point(dom, v).dot(v);
}

// Closure of {<x, u> : x in Omega}. Closed forms for boxes and the paraboloid;
// support points elsewhere.
inline Interval support_interval(const BaseDomain& dom, const Vec& u) {
  if (u.size() != dom.dim()) throw ArgumentError("support_interval: direction has wrong dimension");
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (dom.kind()) {
    case DomainKind::kIntervalProduct: {
      Interval r{0.0, 0.0};
      for (Index i = 0; i < dom.dim(); ++i) {
        r.hi += u[i] * (u[i] >= 0.0 ? dom.box_hi()[i] : dom.box_lo()[i]);
        r.lo += u[i] * (u[i] >= 0.0 ? dom.box_lo()[i] : dom.box_hi()[i]);
      }
      return r;
    }
    case DomainKind::kParaboloid: {
      // sup over {x1 > x2^2} of u1 x1 + u2 x2 is finite only for u1 < 0.
      auto one_sided = [](double u1, double u2) {
        return u1 < 0.0 ? -u2 * u2 / (4.0 * u1) : (u1 == 0.0 && u2 == 0.0 ? 0.0 : inf);
      };
      return {-one_sided(-u[0], -u[1]), one_sided(u[0], u[1])};
    }
    case DomainKind::kPolytope:
      throw DomainError("support_interval: unavailable for general polytopes");
    default:
      return {-support_value(dom, -u), support_value(dom, u)};
  }
}

// rho'(x) = rho(A^{-1}(x - shift)): the image domain A(Omega) + shift.
inline BaseDomain affinely_transformed(const BaseDomain& dom, const Mat& A, const Vec& shift) {
  if (!dom.smooth()) throw DomainError("affinely_transformed: smooth bases only");
  if (A.rows() != dom.dim() || A.cols() != dom.dim() || shift.size() != dom.dim())
    throw ArgumentError("affinely_transformed: shape mismatch");
  const Mat Ainv = A.inverse();
  const double opnorm = A.jacobiSvd().singularValues()[0];
  BaseDomain inner = dom;
  return BaseDomain::custom_smooth(
      dom.dim(), [inner, Ainv, shift](const Vec& x) { return inner.rho(Ainv * (x - shift)); },
      [inner, Ainv, shift](const Vec& x) { return (Ainv.transpose() * inner.grad(Ainv * (x - shift))).eval(); },
      A * dom.interior_point() + shift, opnorm * dom.bounding_radius() + shift.norm());
}

}  // namespace tubegeo
