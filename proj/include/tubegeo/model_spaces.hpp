#pragma once

// Closed-form Kobayashi distances for the model spaces: unit disc, half-plane
// tube, strip tube, their finite products, the unit polydisc, the Euclidean
// unit ball, and tubes over interval products (including half-lines and full
// lines, where the distance degenerates).
//
// All formulas are written in cancellation-free form so that points at
// hyperbolic distance ~30 (|lambda| = 1 - 2^-52) still come out with ~1e-14
// relative accuracy; the four-point checks downstream subtract distances of
// that size and need it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>
#include <vector>

#include "tubegeo/types.hpp"

namespace tubegeo {

// log((1+t)/(1-t))/2 evaluated from separately computed numerator/denominator
// magnitudes: atanh of |num/den| as log(den + num) - log(den - num) would lose
// digits, so callers pass the exact factors instead (see poincare below).

// Poincare distance on the unit disc.
inline double poincare(Complex lambda, Complex mu) {
  if (std::abs(lambda) >= 1.0 || std::abs(mu) >= 1.0)
    throw ArgumentError("poincare: points must lie in the open unit disc");
  const double num = std::abs(lambda - mu);
  if (num == 0.0) return 0.0;
  const double den = std::abs(1.0 - std::conj(mu) * lambda);
  // 1 - |m(lambda)|^2 = (1-|lambda|^2)(1-|mu|^2)/den^2 with m the disc automorphism;
  // this product form avoids the cancellation in den - num.
  const double one_minus_l2 = (1.0 - std::abs(lambda)) * (1.0 + std::abs(lambda));
  const double one_minus_m2 = (1.0 - std::abs(mu)) * (1.0 + std::abs(mu));
  return std::log(den + num) - 0.5 * std::log(one_minus_l2 * one_minus_m2);
}

inline double atanh_stable(double t) {
  if (!(t >= 0.0) || t >= 1.0) throw ArgumentError("atanh_stable: need 0 <= t < 1");
  return 0.5 * std::log1p(2.0 * t / (1.0 - t));
}

namespace detail {

// acosh(1 + q) for q >= 0 without cancellation at either end.
inline double acosh1p(double q) {
  if (q < 0.0) q = 0.0;
  if (q > 1e150) return std::log(2.0) + std::log(q);  // acosh(1+q) = log(2q) + O(1/q)
  return std::log1p(q + std::sqrt(q * (2.0 + q)));
}

}  // namespace detail

// Tube over (0, infinity): the right half-plane {Re z > 0}.
inline double halfplane_distance(Complex w, Complex z) {
  if (!(w.real() > 0.0) || !(z.real() > 0.0))
    throw ArgumentError("halfplane_distance: points must have positive real part");
  const double s = std::abs(w - z);
  if (s == 0.0) return 0.0;
  const double pr = 2.0 * w.real() * z.real();
  if (s < 1e100 && pr > 1e-100) return 0.5 * detail::acosh1p(s * s / pr);
  // Out-of-range magnitudes: work with log q to dodge overflow.
  const double logq = 2.0 * std::log(s) - std::log(2.0) - std::log(w.real()) - std::log(z.real());
  if (logq > 69.0) return 0.5 * (std::log(2.0) + logq);  // acosh(1+q) = log(2q) + O(1/q)
  return 0.5 * detail::acosh1p(std::exp(logq));
}

// Tube over a bounded interval (lo, hi).
//
// Normalizing to {|Re u| < 1} and mapping through u -> exp(i pi (u+1)/2) onto the
// upper half-plane gives, with x = Re u, y = Im u,
//   cosh 2d = 1 + [cosh(pi (y1-y2)/2) - cos(pi (x1-x2)/2)] / (cos(pi x1/2) cos(pi x2/2)).
// The log-domain branch keeps the formula finite for |y1 - y2| in the thousands.
inline double strip_distance(double lo, double hi, Complex w, Complex z) {
  if (!(hi > lo)) throw ArgumentError("strip_distance: need lo < hi");
  if (!(w.real() > lo && w.real() < hi && z.real() > lo && z.real() < hi))
    throw ArgumentError("strip_distance: points must lie in the strip");
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  const double x1 = (w.real() - mid) / half, x2 = (z.real() - mid) / half;
  const double y1 = w.imag() / half, y2 = z.imag() / half;
  const double c1 = std::cos(0.5 * kPi * x1), c2 = std::cos(0.5 * kPi * x2);
  const double a = 0.5 * kPi * (y1 - y2);
  const double dx = 0.5 * kPi * (x1 - x2);
  if (std::abs(a) > 300.0) {
    // q = [cosh a - cos dx] / (c1 c2) ~ e^|a| / (2 c1 c2): work with log q directly.
    const double logq = std::abs(a) - std::log(2.0) - std::log(c1 * c2) +
                        std::log1p(std::exp(-2.0 * std::abs(a)) - 2.0 * std::cos(dx) * std::exp(-std::abs(a)));
    // acosh(1+q) = log(2q) + O(1/q) here.
    return 0.5 * (std::log(2.0) + logq);
  }
  double q;
  if (std::abs(a) < 1.0 && std::abs(dx) < 1.0) {
    // cosh a - cos dx = 2 (sinh^2(a/2) + sin^2(dx/2)), exact for small arguments.
    const double sh = std::sinh(0.5 * a), sn = std::sin(0.5 * dx);
    q = 2.0 * (sh * sh + sn * sn) / (c1 * c2);
  } else {
    q = (std::cosh(a) - std::cos(dx)) / (c1 * c2);
  }
  return 0.5 * detail::acosh1p(q);
}

// Tube over an interval with endpoints possibly infinite. Over a half-line the tube is
// affinely a half-plane; over the whole line the distance is identically zero.
inline double interval_tube_distance(double lo, double hi, Complex w, Complex z) {
  const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
  if (lo_inf && hi_inf) return 0.0;
  if (!lo_inf && !hi_inf) return strip_distance(lo, hi, w, z);
  if (lo_inf) return halfplane_distance(hi - w, hi - z);
  return halfplane_distance(w - lo, z - lo);
}

// Tube over a product of intervals: the max of the factor distances.
inline double product_tube_distance(const Vec& lo, const Vec& hi, const CVec& w, const CVec& z) {
  if (lo.size() != hi.size() || w.size() != lo.size() || z.size() != lo.size())
    throw ArgumentError("product_tube_distance: size mismatch");
  double d = 0.0;
  for (Index i = 0; i < lo.size(); ++i)
    d = std::max(d, interval_tube_distance(lo[i], hi[i], w[i], z[i]));
  return d;
}

// Tube over the open positive orthant (0, infinity)^n.
inline double orthant_tube_distance(const CVec& w, const CVec& z) {
  if (w.size() != z.size()) throw ArgumentError("orthant_tube_distance: size mismatch");
  double d = 0.0;
  for (Index i = 0; i < w.size(); ++i) d = std::max(d, halfplane_distance(w[i], z[i]));
  return d;
}

inline double polydisc_distance(const CVec& w, const CVec& z) {
  if (w.size() != z.size()) throw ArgumentError("polydisc_distance: size mismatch");
  double d = 0.0;
  for (Index i = 0; i < w.size(); ++i) d = std::max(d, poincare(w[i], z[i]));
  return d;
}

// Euclidean unit ball of C^n: atanh of the Mobius pseudo-distance,
// 1 - |m_z(w)|^2 = (1-|z|^2)(1-|w|^2)/|1 - <w,z>|^2.
inline double ball_distance(const CVec& w, const CVec& z) {
  if (w.size() != z.size()) throw ArgumentError("ball_distance: size mismatch");
  const double nw2 = w.squaredNorm(), nz2 = z.squaredNorm();
  if (nw2 >= 1.0 || nz2 >= 1.0) throw ArgumentError("ball_distance: points must lie in the open unit ball");
  const Complex ip = z.dot(w);  // sum conj(z_i) w_i
  const double d2 = std::norm(1.0 - ip);
  const double m2 = (1.0 - nw2) * (1.0 - nz2) / d2;
  // |m_z(w)|^2 = 1 - m2; distance = atanh(sqrt(1 - m2)) = log((1+s)/sqrt(m2)) with s = sqrt(1-m2).
  const double s2 = std::max(0.0, 1.0 - m2);
  if (s2 == 0.0) return 0.0;
  const double s = std::sqrt(s2);
  return std::log1p(s) - 0.5 * std::log(m2);
}

enum class ModelKind { kDisc, kPolydisc, kHalfplaneTube, kOrthantTube, kStripTube, kIntervalProductTube, kBall };

// A model space with exact distance: used as the exact leg of comparisons and
// as the transported target of cone blow-ups.
struct ModelSpace {
  ModelKind kind = ModelKind::kDisc;
  Index n = 1;
  Vec lo, hi;  // interval-product data (kStripTube uses entry 0)

  static ModelSpace disc() { return {ModelKind::kDisc, 1, {}, {}}; }
  static ModelSpace polydisc(Index n) { return {ModelKind::kPolydisc, n, {}, {}}; }
  static ModelSpace halfplane_tube() { return {ModelKind::kHalfplaneTube, 1, {}, {}}; }
  static ModelSpace orthant_tube(Index n) { return {ModelKind::kOrthantTube, n, {}, {}}; }
  static ModelSpace strip_tube(double lo, double hi) {
    return {ModelKind::kStripTube, 1, Vec::Constant(1, lo), Vec::Constant(1, hi)};
  }
  static ModelSpace interval_product_tube(Vec lo, Vec hi) {
    if (lo.size() != hi.size()) throw ArgumentError("interval_product_tube: size mismatch");
    return {ModelKind::kIntervalProductTube, lo.size(), std::move(lo), std::move(hi)};
  }
  static ModelSpace ball(Index n) { return {ModelKind::kBall, n, {}, {}}; }
};

inline double model_distance(const ModelSpace& m, const CVec& w, const CVec& z) {
  if (w.size() != m.n || z.size() != m.n) throw ArgumentError("model_distance: point size mismatch");
  switch (m.kind) {
    case ModelKind::kDisc:
      return poincare(w[0], z[0]);
    case ModelKind::kPolydisc:
      return polydisc_distance(w, z);
    case ModelKind::kHalfplaneTube:
      return halfplane_distance(w[0], z[0]);
    case ModelKind::kOrthantTube:
      return orthant_tube_distance(w, z);
    case ModelKind::kStripTube:
      return strip_distance(m.lo[0], m.hi[0], w[0], z[0]);
    case ModelKind::kIntervalProductTube:
      return product_tube_distance(m.lo, m.hi, w, z);
    case ModelKind::kBall:
      return ball_distance(w, z);
  }
  return 0.0;
}

}  // namespace tubegeo
