#pragma once

// Two independent Kobayashi-distance oracles.
//
// Lower bound: every real unit direction u induces the holomorphic map
// zeta -> <zeta, u> from T_Omega onto a tube over the support interval of
// Omega along u (a strip, or a half-plane when one end is unbounded), and
// holomorphic maps do not increase the distance. The bound is the max of the
// projected model distances over a direction sample.
//
// Upper bound: the Lempert function evaluated over polynomial discs phi of
// degree <= d with phi(0) = w, phi(s) = z (s real positive by rotation) and
// Re phi contained in Omega, enforced on a boundary grid with a margin. Any
// feasible disc certifies atanh(s) >= k(w, z). Feasibility is monotone in s
// (a feasible disc rescales to any larger s), so bisection applies; the
// bracket starts at tanh(affine lower bound), which no feasible s can beat.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "tubegeo/base_domain.hpp"
#include "tubegeo/model_spaces.hpp"

namespace tubegeo {

namespace detail {

struct SupportInterval {
  double lo = 0.0, hi = 0.0;
  bool lo_finite = false, hi_finite = false;
};

// Support interval {<x, u> : x in Omega}. Conservative: directions whose
// support is not available report as unbounded and are skipped by callers,
// which can only weaken (never invalidate) a lower bound.
inline SupportInterval support_interval(const BaseDomain& dom, const Vec& u) {
  SupportInterval iv;
  switch (dom.kind()) {
    case DomainKind::kIntervalProduct: {
      iv.lo = iv.hi = 0.0;
      for (Index i = 0; i < dom.dim(); ++i) {
        iv.lo += std::min(dom.box_lo()[i] * u[i], dom.box_hi()[i] * u[i]);
        iv.hi += std::max(dom.box_lo()[i] * u[i], dom.box_hi()[i] * u[i]);
      }
      iv.lo_finite = iv.hi_finite = true;
      return iv;
    }
    case DomainKind::kPolytope: {
      for (Index i = 0; i < dom.normals().rows(); ++i) {
        if ((dom.normals().row(i).transpose() - u).norm() < 1e-12) {
          iv.hi = dom.offsets()[i];
          iv.hi_finite = true;
        }
        if ((dom.normals().row(i).transpose() + u).norm() < 1e-12) {
          iv.lo = -dom.offsets()[i];
          iv.lo_finite = true;
        }
      }
      return iv;
    }
    case DomainKind::kParaboloid: {
      // sup over x1 > x2^2 of u1 x1 + u2 x2 is u2^2 / (4 |u1|) for u1 < 0.
      if (u[0] < 0.0) {
        iv.hi = u[1] * u[1] / (4.0 * -u[0]);
        iv.hi_finite = true;
      }
      if (u[0] > 0.0) {
        iv.lo = -(u[1] * u[1] / (4.0 * u[0]));
        iv.lo_finite = true;
      }
      return iv;
    }
    default:
      break;
  }
  if (dom.smooth() && dom.bounded()) {
    iv.hi = support_point(dom, u).dot(u);
    iv.lo = support_point(dom, -u).dot(u);
    iv.lo_finite = iv.hi_finite = true;
  }
  return iv;
}

inline double projected_model_distance(const SupportInterval& iv, Complex pw, Complex pz) {
  if (iv.lo_finite && iv.hi_finite) return interval_tube_distance(iv.lo, iv.hi, pw, pz);
  if (iv.hi_finite)
    return halfplane_distance(Complex(iv.hi, 0.0) - pw, Complex(iv.hi, 0.0) - pz);
  if (iv.lo_finite)
    return halfplane_distance(pw - Complex(iv.lo, 0.0), pz - Complex(iv.lo, 0.0));
  return 0.0;
}

inline std::vector<Vec> direction_sample(const BaseDomain& dom, const CVec& w, const CVec& z,
                                         Index count) {
  const Index n = dom.dim();
  std::vector<Vec> dirs;
  for (Index i = 0; i < n; ++i) dirs.push_back(Vec::Unit(n, i));
  const Vec re_chord = (z - w).real(), im_chord = (z - w).imag();
  if (re_chord.norm() > 1e-14) dirs.push_back(re_chord.normalized());
  if (im_chord.norm() > 1e-14) dirs.push_back(im_chord.normalized());
  if (dom.kind() == DomainKind::kPolytope)
    for (Index i = 0; i < dom.normals().rows(); ++i)
      dirs.push_back(dom.normals().row(i).transpose());
  if (n == 2) {
    for (Index k = 0; k < count; ++k) {
      const double t = kPi * static_cast<double>(k) / static_cast<double>(count);
      dirs.push_back((Vec(2) << std::cos(t), std::sin(t)).finished());
    }
  } else if (n > 2) {
    std::mt19937_64 gen(2718281828u);
    std::normal_distribution<double> nd;
    for (Index k = 0; k < count; ++k) {
      Vec v(n);
      for (Index i = 0; i < n; ++i) v[i] = nd(gen);
      if (v.norm() > 1e-8) dirs.push_back(v.normalized());
    }
  }
  return dirs;
}

}  // namespace detail

inline double affine_lower_bound(const BaseDomain& dom, const CVec& w, const CVec& z,
                                 Index directions = 64) {
  if (w.size() != dom.dim() || z.size() != dom.dim())
    throw ArgumentError("affine_lower_bound: dimension mismatch");
  double best = 0.0;
  for (const Vec& u : detail::direction_sample(dom, w, z, directions)) {
    const detail::SupportInterval iv = detail::support_interval(dom, u);
    if (!iv.lo_finite && !iv.hi_finite) continue;
    const Complex pw = w.dot(u.cast<Complex>());
    const Complex pz = z.dot(u.cast<Complex>());
    best = std::max(best, detail::projected_model_distance(iv, pw, pz));
  }
  return best;
}

struct LempertOptions {
  double margin = 1e-6;         // required clearance rho <= -margin on the grid
  Index grid_min = 256;         // boundary grid floor (actual: max of this and 32(d+1))
  int inner_iterations = 30000; // subgradient steps per feasibility solve
  int stall_window = 4000;      // stop a solve when this many steps bring no progress
  double s_tol = 1e-5;          // bisection resolution in s
  long budget = 4000000;        // total descent-step budget across the call
  bool stop_after_first = false; // return after the first degree that certifies
  double floor_hint = 0.0;       // known-infeasible s level, raises the bisection floor
  int min_degree = 1;            // first degree of the ladder
  // Start for the bracket solve of a degree: (degree, s, free_dim) -> packed
  // free coefficients. Empty means the zero disc.
  std::function<Vec(int, double, Index)> bracket_start;
};

struct LempertBound {
  double value = std::numeric_limits<double>::infinity();
  double s = 1.0;
  int degree = 0;            // degree of the certifying disc
  bool certified = false;    // a grid-feasible disc backs the value
  bool affine_fallback = false;
  CVec coefficients;         // c_1..c_degree of the accepted disc, stacked
};

namespace detail {

// Polynomial disc phi(lambda) = w + sum_k c_k lambda^k with c_1 eliminated by
// the interpolation phi(s) = z. Free variables: c_2..c_D packed as
// [Re c_2; Im c_2; Re c_3; ...].
class DiscProblem {
 public:
  DiscProblem(const BaseDomain& dom, const CVec& w, const CVec& z, int degree, Index grid,
              double margin)
      : dom_(dom), w_(w), z_(z), n_(w.size()), deg_(degree), grid_(grid), margin_(margin) {
    cos_.resize(degree, grid);
    sin_.resize(degree, grid);
    for (int k = 1; k <= degree; ++k)
      for (Index j = 0; j < grid; ++j) {
        const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid);
        cos_(k - 1, j) = std::cos(k * t);
        sin_(k - 1, j) = std::sin(k * t);
      }
  }

  Index free_dim() const { return 2 * n_ * (deg_ - 1); }

  CVec coefficients(const Vec& y, double s) const {
    CVec c = CVec::Zero(n_ * deg_);
    CVec rest = CVec::Zero(n_);
    for (int k = 2; k <= deg_; ++k) {
      const Index off = 2 * n_ * (k - 2);
      const CVec ck = y.segment(off, n_).cast<Complex>() +
                      Complex(0.0, 1.0) * y.segment(off + n_, n_).cast<Complex>();
      c.segment(n_ * (k - 1), n_) = ck;
      rest += ck * std::pow(s, k);
    }
    c.head(n_) = (z_ - w_ - rest) / s;
    return c;
  }

  // Re phi(e^{it_j}) for all grid points, one column per point.
  Mat boundary_real(const CVec& c) const {
    Mat X(n_, grid_);
    X.colwise() = Vec(w_.real());
    for (int k = 1; k <= deg_; ++k) {
      const Vec re = c.segment(n_ * (k - 1), n_).real();
      const Vec im = c.segment(n_ * (k - 1), n_).imag();
      X += re * cos_.row(k - 1) - im * sin_.row(k - 1);
    }
    return X;
  }

  double max_rho(const CVec& c, Index* argmax = nullptr, Mat* points = nullptr) const {
    Mat X = boundary_real(c);
    double m = -std::numeric_limits<double>::infinity();
    for (Index j = 0; j < grid_; ++j) {
      const double r = dom_.rho(X.col(j));
      if (r > m) {
        m = r;
        if (argmax) *argmax = j;
      }
    }
    if (points) *points = std::move(X);
    return m;
  }

  bool feasible(const Vec& y, double s) const { return max_rho(coefficients(y, s)) <= -margin_; }

  // Validation on a denser grid than the optimizer saw, with half the margin.
  bool validate(const Vec& y, double s, Index factor = 8) const {
    const CVec c = coefficients(y, s);
    for (Index j = 0; j < grid_ * factor; ++j) {
      const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid_ * factor);
      CVec phi = w_;
      for (int k = 1; k <= deg_; ++k)
        phi += c.segment(n_ * (k - 1), n_) * std::exp(Complex(0.0, k * t));
      if (dom_.rho(phi.real()) > -0.5 * margin_) return false;
    }
    return true;
  }

  // Subgradient of y -> rho(Re phi(e^{it_j})) at the active grid point, with
  // the chain rule through the c_1 elimination.
  Vec active_gradient(const Mat& X, Index j, double s) const {
    Vec out(free_dim());
    const Vec g = dom_.grad(X.col(j));
    for (int k = 2; k <= deg_; ++k) {
      const Index off = 2 * n_ * (k - 2);
      const double sk = std::pow(s, k - 1);
      out.segment(off, n_) = (cos_(k - 1, j) - cos_(0, j) * sk) * g;
      out.segment(off + n_, n_) = (-sin_(k - 1, j) + sin_(0, j) * sk) * g;
    }
    return out;
  }

 private:
  const BaseDomain& dom_;
  CVec w_, z_;
  Index n_;
  int deg_;
  Index grid_;
  double margin_;
  Mat cos_, sin_;
};

// Polyak subgradient descent on the convex function y -> max_j rho_j(y),
// aiming below `target`. Step (G - target)/|g|^2 needs no tuning and
// converges to the target sublevel set whenever it is nonempty.
inline bool descend_below(const DiscProblem& prob, Vec& y, double s, double target,
                          const LempertOptions& opts, long& budget) {
  if (prob.free_dim() == 0) return prob.max_rho(prob.coefficients(y, s)) <= target;
  Vec best_y = y;
  double best_val = std::numeric_limits<double>::infinity();
  int last_progress = 0;
  for (int it = 0; it < opts.inner_iterations && budget > 0; ++it, --budget) {
    Index jmax = 0;
    Mat X;
    const double val = prob.max_rho(prob.coefficients(y, s), &jmax, &X);
    if (val < best_val - 1e-12) {
      best_val = val;
      best_y = y;
      last_progress = it;
    }
    if (val <= target) return true;
    if (it - last_progress > opts.stall_window) break;
    const Vec g = prob.active_gradient(X, jmax, s);
    const double gg = g.squaredNorm();
    if (!(gg > 1e-28)) break;
    y -= ((val - target) / gg) * g;
  }
  y = best_y;
  return best_val <= target;
}

// Grid feasibility alone can graze the margin at the nodes and spike between
// them, so acceptance requires the dense-grid validation; when it fails, the
// solve repeats with a deeper clearance target. The extra clearance costs a
// little optimality at high s and nothing at all where the bound is loose.
inline bool solve_and_validate(const DiscProblem& prob, Vec& y, double s,
                               const LempertOptions& opts, long& budget) {
  for (double target : {std::max(4.0 * opts.margin, 1e-4), 1e-3, 1e-2}) {
    Vec trial = y;
    if (descend_below(prob, trial, s, -target, opts, budget) && prob.validate(trial, s)) {
      y = trial;
      return true;
    }
    if (budget <= 0) break;
  }
  return false;
}

}  // namespace detail

inline LempertBound lempert_upper_bound(const BaseDomain& dom, const CVec& w, const CVec& z,
                                        int degree = 4, LempertOptions opts = {}) {
  const Index n = dom.dim();
  if (w.size() != n || z.size() != n)
    throw ArgumentError("lempert_upper_bound: dimension mismatch");
  if (!contains(dom, w.real()) || !contains(dom, z.real()))
    throw ArgumentError("lempert_upper_bound: point outside base");
  if (degree < 1) throw ArgumentError("lempert_upper_bound: degree must be positive");

  LempertBound out;
  if ((w - z).norm() == 0.0) {
    out.value = 0.0;
    out.s = 0.0;
    out.certified = true;
    return out;
  }

  // No feasible s can undercut the affine lower bound.
  const double s_floor = std::max(std::tanh(affine_lower_bound(dom, w, z)) * (1.0 - 1e-9),
                                  std::min(opts.floor_hint, 1.0 - 1e-9));
  long budget = opts.budget;

  Vec best_y;
  double best_s = 1.0;
  int best_degree = 0;

  for (int d = std::max(1, opts.min_degree); d <= degree; ++d) {
    const Index grid = std::max<Index>(opts.grid_min, 32 * (d + 1));
    const detail::DiscProblem prob(dom, w, z, d, grid, opts.margin);
    Vec y = Vec::Zero(prob.free_dim());
    if (best_degree > 0) y.head(2 * n * (best_degree - 1)) = best_y;  // warm start

    // Establish a feasible upper bracket: carry the best previous disc if it
    // still clears this degree's grid, otherwise solve once near the top of
    // the s range, where feasibility has the most slack.
    double hi = std::numeric_limits<double>::quiet_NaN();
    if (best_degree > 0 && best_s < 1.0 && prob.feasible(y, best_s) &&
        prob.validate(y, best_s)) {
      hi = best_s;
    } else {
      const double s_top = std::max(0.999, 0.5 * (1.0 + s_floor));
      if (best_degree == 0 && opts.bracket_start) {
        const Vec hint = opts.bracket_start(d, s_top, prob.free_dim());
        if (hint.size() == prob.free_dim()) y = hint;
      }
      if (detail::solve_and_validate(prob, y, s_top, opts, budget)) hi = s_top;
    }
    if (std::isnan(hi)) continue;  // no feasible disc found at this degree

    double lo = s_floor;
    while (hi - lo > opts.s_tol && budget > 0) {
      const double mid = 0.5 * (lo + hi);
      Vec trial = y;
      if (detail::solve_and_validate(prob, trial, mid, opts, budget)) {
        hi = mid;
        y = trial;
      } else {
        lo = mid;
      }
    }
    if (hi < best_s) {
      best_s = hi;
      best_y = y;
      best_degree = d;
    }
    if (opts.stop_after_first && best_degree > 0) break;
  }

  if (best_degree == 0) {
    // Not even the affine chord fits: report the un-certified fallback.
    out.affine_fallback = true;
    return out;
  }
  out.value = atanh_stable(best_s);
  out.s = best_s;
  out.degree = best_degree;
  out.certified = true;
  const detail::DiscProblem fin(dom, w, z, best_degree,
                                std::max<Index>(opts.grid_min, 32 * (best_degree + 1)),
                                opts.margin);
  out.coefficients = fin.coefficients(best_y, best_s);
  return out;
}

}  // namespace tubegeo
