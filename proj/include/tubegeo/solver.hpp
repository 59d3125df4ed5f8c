#pragma once

// Two-point geodesic solver. Given w, z in T_Omega, find boundary data (a, b)
// and s in (0, 1) with f(0) = w and f(s) = z; the Kobayashi distance is then
// p(0, s) = atanh(s).
//
// Unknowns: (a, b) on the gauge sphere |a|^2 + |b|^2 = 1, parametrized in the
// tangent space at the current point (a Householder basis removes the scale
// direction), plus sigma with s = (1 + tanh sigma)/2 to keep s interior.
// Im f(0) is fixed to Im w by the free fiber translation. Equations:
// Re f(0) = Re w (n) and f(s) = z (2n). Pairs with equal imaginary parts get
// the reduced real system (a real, n + n equations): their geodesics carry
// conjugation-symmetric boundary data and the trace is exactly real.
//
// Damped least-squares Newton with a central finite-difference Jacobian,
// Armijo backtracking, a Levenberg fallback, and a 16-start budget: one seed
// from the support-chord heuristic, one from the complex chord, the rest
// random draws from the run seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "tubegeo/base_domain.hpp"
#include "tubegeo/bounds.hpp"
#include "tubegeo/geodesic_family.hpp"
#include "tubegeo/model_spaces.hpp"
#include "tubegeo/schwarz.hpp"

namespace tubegeo {

struct ConnectOptions {
  double tolerance = 1e-6;        // accepted endpoint residual (max norm)
  double inner_tolerance = 1e-10; // Newton target
  int max_iterations = 200;
  int multistart = 16;
  bool heuristic_seeds = true;  // start from the support/complex chords before random draws
  std::uint64_t seed = 12345;
  double fd_step = 1e-6;
  Index profile_grid = 1024;
  EvalOptions eval;               // final high-accuracy evaluation
};

struct GeodesicTrace {
  GeodesicParams params;
  double s = 0.5;
  BoundaryProfile profile;
  double residual_w = 0.0;  // |f(0) - w|
  double residual_z = 0.0;  // |f(s) - z| (boundary pairs: radial-limit defects)
  std::shared_ptr<const GeodesicEvaluator> evaluator;
  CVec w, z;
  bool boundary_pair = false;
  bool real_pair = false;
  int start_index = -1;
  int iterations = 0;

  FCaseLabel label() const { return profile.label; }
};

struct VerifyOptions {
  Index grid = 512;                 // circle grid for the boundary checks
  double r_disc = 0.999;            // radius of the interior-mapping check
  double boundary_tol = 1e-8;       // |rho(g)| on the circle
  double alignment_tol = 1e-6;      // 1 - cos(angle(gauss(g), F~))
  double endpoint_tol = 1e-6;
  double field_floor = 1e-3;        // skip angles with |F~| below this
};

struct VerifyReport {
  double max_boundary_defect = 0.0;
  double max_alignment_error = 0.0;
  double max_interior_rho = -std::numeric_limits<double>::infinity();
  double residual_w = 0.0;
  double residual_z = 0.0;
  bool boundary_ok = false;
  bool alignment_ok = false;
  bool interior_ok = false;
  bool endpoints_ok = false;
  bool pass = false;
};

namespace detail {

// Orthonormal basis of the tangent space at p on the unit sphere: the last
// m - 1 columns of the Householder reflection sending e_1 to -sign(p_1) p.
inline Mat tangent_basis(const Vec& p) {
  const Index m = p.size();
  Vec v = p;
  v[0] += (p[0] >= 0.0 ? 1.0 : -1.0);
  const double vv = v.squaredNorm();
  Mat T(m, m - 1);
  for (Index j = 1; j < m; ++j) T.col(j - 1) = Vec::Unit(m, j) - (2.0 * v[j] / vv) * v;
  return T;
}

struct SphereNewtonResult {
  Vec p;
  double sigma = 0.0;
  double residual = std::numeric_limits<double>::infinity();  // max norm
  int iterations = 0;
};

// Damped least-squares Newton for a square system R(p, sigma) = 0 with p on
// the unit sphere. Retraction: p <- normalize(p + T delta).
template <typename ResidualFn>
SphereNewtonResult sphere_newton(const ResidualFn& residual_fn, Vec p0, double sigma0,
                                 const ConnectOptions& opts) {
  SphereNewtonResult out;
  Vec p = p0.normalized();
  double sigma = sigma0;
  Vec r = residual_fn(p, sigma);
  const double h = opts.fd_step;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    out.iterations = iter;
    if (r.template lpNorm<Eigen::Infinity>() < opts.inner_tolerance) break;

    const Mat T = tangent_basis(p);
    const Index dim = T.cols() + 1;
    Mat J(r.size(), dim);
    for (Index k = 0; k < T.cols(); ++k) {
      const Vec pp = (p + h * T.col(k)).normalized();
      const Vec pm = (p - h * T.col(k)).normalized();
      J.col(k) = (residual_fn(pp, sigma) - residual_fn(pm, sigma)) / (2.0 * h);
    }
    J.col(dim - 1) = (residual_fn(p, sigma + h) - residual_fn(p, sigma - h)) / (2.0 * h);

    bool accepted = false;
    double mu = 0.0;
    while (!accepted) {
      Vec step;
      if (mu == 0.0) {
        step = J.colPivHouseholderQr().solve(-r);
      } else {
        const Mat JtJ = J.transpose() * J + mu * Mat::Identity(dim, dim);
        step = JtJ.ldlt().solve(-J.transpose() * r);
      }
      if (step.allFinite()) {
        if (const double sn = step.norm(); sn > 2.0) step *= 2.0 / sn;
        for (double alpha = 1.0; alpha > 1e-4; alpha *= 0.5) {
          const Vec cand_p = (p + T * (alpha * step.head(dim - 1))).normalized();
          const double cand_sigma = std::clamp(sigma + alpha * step[dim - 1], -20.0, 20.0);
          const Vec cand_r = residual_fn(cand_p, cand_sigma);
          if (cand_r.norm() <= (1.0 - 1e-4 * alpha) * r.norm()) {
            p = cand_p;
            sigma = cand_sigma;
            r = cand_r;
            accepted = true;
            break;
          }
        }
      }
      if (!accepted) {
        mu = (mu == 0.0) ? 1e-6 : mu * 100.0;
        if (mu > 1e10) break;
      }
    }
    if (!accepted) break;  // stalled; the caller judges the residual
  }
  out.p = p;
  out.sigma = sigma;
  out.residual = r.template lpNorm<Eigen::Infinity>();
  return out;
}

}  // namespace detail

inline VerifyReport verify_geodesic(const BaseDomain& dom, const GeodesicTrace& trace,
                                    VerifyOptions opts = {});

// Geodesic with prescribed boundary contact: x, y on the boundary of the base
// with outward normals u, v. The data a = (v - u)/4, b = (u + v)/2 gives
// F(-1) = u and F(1) = v exactly, so the real parts of the radial limits at
// -1 and 1 are x and y.
inline GeodesicTrace connect_boundary(const BaseDomain& dom, const Vec& x, const Vec& y,
                                      ConnectOptions opts = {}) {
  if (!dom.smooth() || !dom.bounded())
    throw DomainError("connect_boundary: base must be bounded with smooth boundary");
  if (x.size() != dom.dim() || y.size() != dom.dim())
    throw ArgumentError("connect_boundary: dimension mismatch");
  if ((x - y).norm() < 1e-12) throw ArgumentError("connect_boundary: points coincide");
  const Vec u = gauss_map(dom, x);
  const Vec v = gauss_map(dom, y);
  if ((u - v).norm() < 1e-12)
    throw DomainError("connect_boundary: equal normals at distinct boundary points");

  CVec a = ((v - u) / 4.0).cast<Complex>();
  GeodesicTrace trace;
  trace.params = make_params(a, (u + v) / 2.0);
  trace.boundary_pair = true;
  trace.real_pair = true;
  trace.s = 0.5;
  trace.w = x.cast<Complex>();
  trace.z = y.cast<Complex>();
  trace.profile = boundary_profile(dom, trace.params, opts.profile_grid);
  trace.evaluator = std::make_shared<GeodesicEvaluator>(dom, trace.params, opts.eval);

  // Radial-limit defects at -1 and 1 stand in for the endpoint residuals.
  const double r = 1.0 - 1e-7;
  trace.residual_w = ((*trace.evaluator)(Complex(-r, 0.0)).real() - x).norm();
  trace.residual_z = ((*trace.evaluator)(Complex(r, 0.0)).real() - y).norm();
  return trace;
}

inline GeodesicTrace connect(const BaseDomain& dom, const CVec& w, const CVec& z,
                             ConnectOptions opts = {}) {
  const Index n = dom.dim();
  if (!dom.smooth() || !dom.bounded())
    throw DomainError("connect: base must be bounded with smooth boundary");
  if (w.size() != n || z.size() != n) throw ArgumentError("connect: dimension mismatch");
  if (!contains(dom, w.real()) || !contains(dom, z.real()))
    throw ArgumentError("connect: point outside base");
  if ((w - z).norm() == 0.0) throw ArgumentError("connect: points coincide");

  const Vec re_w = w.real(), re_z = z.real();
  const Vec im_w = w.imag(), im_z = z.imag();
  const bool real_pair = (im_z - im_w).lpNorm<Eigen::Infinity>() <= 1e-13;

  EvalOptions fast = opts.eval;
  fast.tol = 1e-8;
  fast.min_grid = 256;
  fast.max_grid = 8192;

  const Index m = real_pair ? 2 * n : 3 * n;
  const auto unpack = [&](const Vec& p) {
    GeodesicParams prm;
    if (real_pair) {
      prm.a = p.head(n).cast<Complex>();
    } else {
      prm.a = p.head(n).cast<Complex>() + Complex(0.0, 1.0) * p.segment(n, n).cast<Complex>();
    }
    prm.b = p.tail(n);
    prm.im_f0 = im_w;
    return prm;
  };
  const auto residual = [&](const Vec& p, double sigma) -> Vec {
    const double s = 0.5 * (1.0 + std::tanh(sigma));
    Vec r = Vec::Constant(m, 1e3);  // off-manifold penalty unless evaluation succeeds
    try {
      const GeodesicEvaluator f(dom, unpack(p), fast);
      const CVec fs = f(Complex(s, 0.0));
      r.head(n) = f.mean() - re_w;
      r.segment(n, n) = fs.real() - re_z;
      if (!real_pair) r.tail(n) = fs.imag() - im_z;
    } catch (const std::exception&) {
    }
    return r;
  };

  // Seeds. The support-chord heuristic takes the boundary construction at the
  // support points of Re z - Re w and its negation; the complex chord mimics
  // the straight segment; the rest are random unit draws.
  std::vector<std::pair<Vec, double>> seeds;
  const double sep = (z - w).norm();
  const double sigma0 = std::atanh(std::clamp(2.0 * std::tanh(sep) - 1.0, -0.9, 0.9));
  const Vec chord = re_z - re_w;
  if (opts.heuristic_seeds && chord.norm() > 1e-12) {
    const Vec xs = support_point(dom, chord);
    const Vec ys = support_point(dom, -chord);
    const Vec u = gauss_map(dom, xs), v = gauss_map(dom, ys);
    Vec p(m);
    if (real_pair) {
      p << (v - u) / 4.0, (u + v) / 2.0;
    } else {
      p << (v - u) / 4.0, Vec::Zero(n), (u + v) / 2.0;
    }
    seeds.emplace_back(p.normalized(), sigma0);
  }
  if (opts.heuristic_seeds) {
    Vec p(m);
    if (real_pair) {
      p << chord / 4.0, (re_w + re_z) / 2.0;
    } else {
      p << chord / 4.0, (im_z - im_w) / 4.0, (re_w + re_z) / 2.0;
    }
    if (p.norm() > 1e-12) seeds.emplace_back(p.normalized(), sigma0);
  }
  std::mt19937_64 gen(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  while (static_cast<int>(seeds.size()) < opts.multistart) {
    Vec p(m);
    for (Index i = 0; i < m; ++i) p[i] = normal(gen);
    if (p.head(real_pair ? n : 2 * n).norm() < 1e-3) continue;  // avoid a ~ 0 draws
    seeds.emplace_back(p.normalized(), sigma0 + normal(gen));
  }

  GeodesicTrace best;
  double best_residual = std::numeric_limits<double>::infinity();
  Vec best_packed;

  for (int start = 0; start < static_cast<int>(seeds.size()); ++start) {
    const detail::SphereNewtonResult sol =
        detail::sphere_newton(residual, seeds[static_cast<size_t>(start)].first,
                              seeds[static_cast<size_t>(start)].second, opts);
    if (!(sol.residual < 1e2)) continue;

    GeodesicTrace trace;
    try {
      trace.params = make_params(unpack(sol.p).a, unpack(sol.p).b, im_w);
      trace.s = 0.5 * (1.0 + std::tanh(sol.sigma));
      trace.evaluator = std::make_shared<GeodesicEvaluator>(dom, trace.params, opts.eval);
      trace.w = w;
      trace.z = z;
      trace.real_pair = real_pair;
      trace.start_index = start;
      trace.iterations = sol.iterations;
      const CVec f0 = (*trace.evaluator)(Complex(0.0, 0.0));
      const CVec fs = (*trace.evaluator)(Complex(trace.s, 0.0));
      trace.residual_w = (f0 - w).norm();
      trace.residual_z = (fs - z).norm();
    } catch (const std::exception&) {
      continue;
    }

    const double res = std::max(trace.residual_w, trace.residual_z);
    const Vec packed = sol.p;
    const bool better =
        res < best_residual ||
        (res == best_residual && best_packed.size() == packed.size() &&
         std::lexicographical_compare(packed.data(), packed.data() + packed.size(),
                                      best_packed.data(), best_packed.data() + best_packed.size()));
    if (better) {
      best = std::move(trace);
      best_residual = res;
      best_packed = packed;
    }
    if (best_residual <= opts.tolerance) {
      best.profile = boundary_profile(dom, best.params, opts.profile_grid);
      if (verify_geodesic(dom, best).pass) return best;
      best_residual = std::numeric_limits<double>::infinity();  // certificate failed: keep searching
    }
  }
  throw NumericError("connect: no start reached the endpoint tolerance", best_residual);
}

inline double kobayashi_distance(const BaseDomain& dom, const CVec& w, const CVec& z,
                                 ConnectOptions opts = {}) {
  if (w.size() == z.size() && (w - z).norm() == 0.0) {
    if (!contains(dom, w.real())) throw ArgumentError("kobayashi_distance: point outside base");
    return 0.0;
  }
  return atanh_stable(connect(dom, w, z, opts).s);
}

// Upper bound seeded from a solved geodesic. The shrunk disc f(c lambda) with
// c = s / s_top still joins w to z at the bracket parameter and its boundary
// circle stays strictly inside the tube, so the truncated Taylor data of
// f(c lambda) starts the polynomial feasibility solves near a feasible point.
// The returned bound rests on the usual dense-grid validation alone.
inline LempertBound lempert_upper_bound(const BaseDomain& dom, const GeodesicTrace& trace,
                                        int degree = 12, LempertOptions opts = {}) {
  const bool seedable = trace.evaluator && trace.s > 0.0 && trace.s < 0.998 &&
                        !opts.bracket_start && degree >= 2;
  if (!seedable) return lempert_upper_bound(dom, trace.w, trace.z, degree, opts);

  // Levels visibly below the solved s are infeasible up to solver error;
  // starting the bisection there saves the stalled descents that prove it.
  if (opts.floor_hint == 0.0) opts.floor_hint = trace.s * (1.0 - 8.0 * opts.s_tol);

  const Index n = trace.w.size();
  const double s_top = 0.999;  // the bracket level used once the floor is hinted
  const double c = trace.s / s_top;
  const double r = std::min(0.99, c + 0.5 * (1.0 - c));
  constexpr Index kRing = 512;
  auto ring = std::make_shared<std::vector<CVec>>();
  try {
    ring->reserve(kRing);
    for (Index j = 0; j < kRing; ++j) {
      const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(kRing);
      ring->push_back((*trace.evaluator)(Complex(r * std::cos(t), r * std::sin(t))));
    }
  } catch (const std::exception&) {
    return lempert_upper_bound(dom, trace.w, trace.z, degree, opts);
  }

  const auto hint = [n, c, r, ring](int d) -> Vec {
    Vec y = Vec::Zero(2 * n * (d - 1));
    for (int k = 2; k <= d; ++k) {
      CVec ak = CVec::Zero(n);
      for (Index j = 0; j < kRing; ++j) {
        const double kt = 2.0 * kPi * static_cast<double>(j * k) / static_cast<double>(kRing);
        ak += (*ring)[static_cast<std::size_t>(j)] * Complex(std::cos(kt), -std::sin(kt));
      }
      const CVec ck = ak * (std::pow(c, k) / (static_cast<double>(kRing) * std::pow(r, k)));
      const Index off = 2 * n * (k - 2);
      y.segment(off, n) = ck.real();
      y.segment(off + n, n) = ck.imag();
    }
    return y;
  };

  // Start the ladder at the first degree whose seeded start is nearly feasible.
  // The truncation tail decays like c^d, so lower degrees tend to face empty
  // feasible sets and would only burn iterations proving it.
  int start = degree;
  for (int d = 2; d <= degree; ++d) {
    const detail::DiscProblem prob(dom, trace.w, trace.z, d,
                                   std::max<Index>(opts.grid_min, 32 * (d + 1)), opts.margin);
    if (prob.max_rho(prob.coefficients(hint(d), s_top)) <= 0.05) {
      start = d;
      break;
    }
  }
  opts.min_degree = std::max(opts.min_degree, start);
  opts.bracket_start = [hint](int d, double, Index free_dim) -> Vec {
    if (d < 2) return Vec::Zero(free_dim);
    Vec y = hint(d);
    return y.size() == free_dim ? y : Vec::Zero(free_dim);
  };
  return lempert_upper_bound(dom, trace.w, trace.z, degree, opts);
}

inline VerifyReport verify_geodesic(const BaseDomain& dom, const GeodesicTrace& trace,
                                    VerifyOptions opts) {
  VerifyReport rep;
  const GeodesicEvaluator& f = *trace.evaluator;

  for (Index j = 0; j < opts.grid; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(opts.grid);
    const Vec field = f_tilde(trace.params, t);
    if (field.norm() < opts.field_floor) continue;
    const Vec g = f.boundary_value(t);
    const double defect = std::abs(dom.rho(g));
    rep.max_boundary_defect = std::max(rep.max_boundary_defect, defect);
    if (defect < 1e-5) {
      const Vec nu = gauss_map(dom, g, 1e-4);
      rep.max_alignment_error =
          std::max(rep.max_alignment_error, 1.0 - nu.dot(field) / field.norm());
    } else {
      rep.max_alignment_error = 1.0;  // not a boundary point, no meaningful normal
    }
  }

  for (double r : {0.25, 0.5, 0.9, opts.r_disc}) {
    for (Index j = 0; j < 64; ++j) {
      const double t = 2.0 * kPi * static_cast<double>(j) / 64.0;
      const Vec re = f(Complex(r * std::cos(t), r * std::sin(t))).real();
      rep.max_interior_rho = std::max(rep.max_interior_rho, dom.rho(re));
    }
  }

  rep.residual_w = trace.residual_w;
  rep.residual_z = trace.residual_z;
  rep.boundary_ok = rep.max_boundary_defect <= opts.boundary_tol;
  rep.alignment_ok = rep.max_alignment_error <= opts.alignment_tol;
  rep.interior_ok = rep.max_interior_rho < 0.0;
  rep.endpoints_ok =
      std::max(rep.residual_w, rep.residual_z) <= opts.endpoint_tol;
  rep.pass = rep.boundary_ok && rep.alignment_ok && rep.interior_ok && rep.endpoints_ok;
  return rep;
}

struct UniquenessReport {
  int requested = 0;
  int converged = 0;
  double max_profile_deviation = 0.0;   // pairwise sup over the grid
  double max_im_on_reals = 0.0;         // raw Im f on (-1, 1) samples (real pairs)
  double max_symmetrization_defect = 0.0;  // |f - f_sym| on real samples
  bool real_pair = false;
};

// Re-solves the pair from independent random starts and measures how far the
// recovered boundary profiles spread. One geodesic passes through a given
// pair, so converged restarts must agree.
inline UniquenessReport uniqueness_probe(const BaseDomain& dom, const CVec& w, const CVec& z,
                                         int restarts, ConnectOptions opts = {}) {
  if (w.size() == z.size() && (w - z).norm() == 0.0)
    throw ArgumentError("uniqueness_probe: points coincide");
  UniquenessReport rep;
  rep.requested = restarts;

  std::vector<GeodesicTrace> traces;
  for (int k = 0; k < restarts; ++k) {
    ConnectOptions one = opts;
    one.multistart = 3;
    one.heuristic_seeds = false;  // independent random starts only
    one.seed = opts.seed + 7919 * static_cast<std::uint64_t>(k + 1);
    try {
      traces.push_back(connect(dom, w, z, one));
    } catch (const std::exception&) {
    }
  }
  rep.converged = static_cast<int>(traces.size());
  if (traces.empty()) return rep;
  rep.real_pair = traces.front().real_pair;

  const Index grid = 256;
  for (size_t i = 0; i < traces.size(); ++i)
    for (size_t j = i + 1; j < traces.size(); ++j) {
      double dev = 0.0;
      for (Index t = 0; t < grid; ++t) {
        const double ang = 2.0 * kPi * static_cast<double>(t) / static_cast<double>(grid);
        if (f_tilde(traces[i].params, ang).norm() < 1e-3 ||
            f_tilde(traces[j].params, ang).norm() < 1e-3)
          continue;
        dev = std::max(dev, (traces[i].evaluator->boundary_value(ang) -
                             traces[j].evaluator->boundary_value(ang))
                                .lpNorm<Eigen::Infinity>());
      }
      rep.max_profile_deviation = std::max(rep.max_profile_deviation, dev);
    }

  for (const GeodesicTrace& tr : traces) {
    const GeodesicEvaluator sym = tr.evaluator->symmetrized();
    for (double r = -0.95; r <= 0.95; r += 0.1) {
      const CVec fv = (*tr.evaluator)(Complex(r, 0.0));
      if (rep.real_pair)
        rep.max_im_on_reals =
            std::max(rep.max_im_on_reals, (fv.imag() - tr.w.imag()).lpNorm<Eigen::Infinity>());
      rep.max_symmetrization_defect = std::max(
          rep.max_symmetrization_defect, (fv - sym(Complex(r, 0.0))).lpNorm<Eigen::Infinity>());
    }
  }
  return rep;
}

}  // namespace tubegeo
