#pragma once

// Four-point function S, non-hyperbolicity witness searches, corner cones of
// polytopal bases, and the dilation blow-up demonstration.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tubegeo/base_domain.hpp"
#include "tubegeo/bounds.hpp"
#include "tubegeo/model_spaces.hpp"
#include "tubegeo/types.hpp"

namespace tubegeo {

// S(x,y,z,w) = d(x,z) + d(y,w) - max{d(x,y) + d(z,w), d(y,z) + d(x,w)}.
// A space is Gromov hyperbolic iff S stays bounded over all quadruples.
template <typename Dist>
double s_four_point(Dist&& d, const CVec& x, const CVec& y, const CVec& z, const CVec& w) {
  return d(x, z) + d(y, w) - std::max(d(x, y) + d(z, w), d(y, z) + d(x, w));
}

enum class DistanceProvenance { kExactModel, kSolver, kBoundsPair };

// Pairwise distances are stored in the order xy, xz, xw, yz, yw, zw.
// Exact evaluators give dist_low == dist_high and s_low == s_high.
struct QuadrupleReport {
  std::array<CVec, 4> points;
  std::array<double, 6> dist_low{};
  std::array<double, 6> dist_high{};
  double s_low = 0.0;
  double s_high = 0.0;
  DistanceProvenance provenance = DistanceProvenance::kExactModel;
  int step = 0;  // search step that produced the record; 0 outside searches
  double parameter = std::numeric_limits<double>::quiet_NaN();  // schedule parameter, if any

  double s() const { return s_low; }
  bool exact() const { return provenance != DistanceProvenance::kBoundsPair; }
};

template <typename Dist>
QuadrupleReport make_quadruple_report(Dist&& d, const CVec& x, const CVec& y, const CVec& z,
                                      const CVec& w,
                                      DistanceProvenance prov = DistanceProvenance::kExactModel) {
  QuadrupleReport rep;
  rep.points = {x, y, z, w};
  rep.dist_low = {d(x, y), d(x, z), d(x, w), d(y, z), d(y, w), d(z, w)};
  rep.dist_high = rep.dist_low;
  rep.s_low = rep.s_high =
      rep.dist_low[1] + rep.dist_low[4] -
      std::max(rep.dist_low[0] + rep.dist_low[5], rep.dist_low[3] + rep.dist_low[2]);
  rep.provenance = prov;
  return rep;
}

// Interval form: lo/hi are lower/upper distance evaluators. The S interval is
// sound whenever lo <= d <= hi holds pairwise.
template <typename Lo, typename Hi>
QuadrupleReport make_quadruple_report_interval(Lo&& lo, Hi&& hi, const CVec& x, const CVec& y,
                                               const CVec& z, const CVec& w) {
  QuadrupleReport rep;
  rep.points = {x, y, z, w};
  rep.dist_low = {lo(x, y), lo(x, z), lo(x, w), lo(y, z), lo(y, w), lo(z, w)};
  rep.dist_high = {hi(x, y), hi(x, z), hi(x, w), hi(y, z), hi(y, w), hi(z, w)};
  rep.s_low = rep.dist_low[1] + rep.dist_low[4] -
              std::max(rep.dist_high[0] + rep.dist_high[5], rep.dist_high[3] + rep.dist_high[2]);
  rep.s_high = rep.dist_high[1] + rep.dist_high[4] -
               std::max(rep.dist_low[0] + rep.dist_low[5], rep.dist_low[3] + rep.dist_low[2]);
  rep.provenance = DistanceProvenance::kBoundsPair;
  return rep;
}

// Quadruple (r,0), (0,r), (-r,0), (0,-r) in the bidisc. Diagonals measure
// 2 atanh r, all four sides atanh r, so S = 2 atanh r -> infinity as r -> 1.
inline QuadrupleReport polydisc_witness(double r) {
  if (!(r > 0.0 && r < 1.0)) throw ArgumentError("polydisc_witness: need 0 < r < 1");
  CVec x = CVec::Zero(2), y = CVec::Zero(2), z = CVec::Zero(2), w = CVec::Zero(2);
  x[0] = Complex(r, 0.0);
  y[1] = Complex(r, 0.0);
  z[0] = Complex(-r, 0.0);
  w[1] = Complex(-r, 0.0);
  return make_quadruple_report(polydisc_distance, x, y, z, w);
}

// Open cone of directions entering the base at a boundary point x: the
// interior of the intersection of the half-spaces active at x. When the
// active normals form an invertible square system the cone is simplicial
// with generators the columns of -N_active^{-1}, and the tube over it is
// handled exactly through the orthant model.
struct ConeModel {
  Vec vertex;
  Mat generators;      // n x n when simplicial, n x 0 otherwise
  Mat active_normals;  // one row per active constraint

  bool simplicial() const { return generators.cols() > 0; }

  bool contains_direction(const Vec& v) const {
    return ((active_normals * v).array() < 0.0).all();
  }

  double distance(const CVec& p, const CVec& q) const {
    if (!simplicial()) throw DomainError("ConeModel::distance: cone is not simplicial");
    Eigen::PartialPivLU<Mat> lu(generators);
    auto pull = [&](const CVec& a) {
      const Vec re = lu.solve((a.real() - vertex).eval());
      const Vec im = lu.solve(a.imag().eval());
      return (re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>()).eval();
    };
    return orthant_tube_distance(pull(p), pull(q));
  }
};

inline ConeModel corner_cone(const BaseDomain& base, const Vec& x) {
  const Index n = base.dim();
  if (x.size() != n) throw ArgumentError("corner_cone: dimension mismatch");

  Mat normals;
  Vec offsets;
  switch (base.kind()) {
    case DomainKind::kPolytope:
      normals = base.normals();
      offsets = base.offsets();
      break;
    case DomainKind::kIntervalProduct:
      normals = Mat::Zero(2 * n, n);
      offsets = Vec::Zero(2 * n);
      for (Index i = 0; i < n; ++i) {
        normals(2 * i, i) = 1.0;
        offsets[2 * i] = base.box_hi()[i];
        normals(2 * i + 1, i) = -1.0;
        offsets[2 * i + 1] = -base.box_lo()[i];
      }
      break;
    default:
      throw ArgumentError("corner_cone: base must be polytopal");
  }

  constexpr double kActiveTol = 1e-9;
  std::vector<Index> active;
  for (Index i = 0; i < normals.rows(); ++i) {
    const double slack = offsets[i] - normals.row(i).dot(x);
    if (slack < -kActiveTol) throw ArgumentError("corner_cone: point lies outside the base");
    if (slack <= kActiveTol) active.push_back(i);
  }
  if (active.empty()) throw ArgumentError("corner_cone: point lies in the interior");

  ConeModel cone;
  cone.vertex = x;
  cone.active_normals.resize(static_cast<Index>(active.size()), n);
  for (std::size_t r = 0; r < active.size(); ++r)
    cone.active_normals.row(static_cast<Index>(r)) = normals.row(active[r]);
  cone.generators.resize(n, 0);
  if (static_cast<Index>(active.size()) == n) {
    Eigen::FullPivLU<Mat> lu(cone.active_normals);
    if (lu.isInvertible()) cone.generators = -lu.inverse();
  }
  return cone;
}

struct BlowupStage {
  int k = 0;
  double t = 1.0;
  bool box_inside = false;  // probe box [1,2]^n inside t * Omega
  bool inside_cone = true;  // t * Omega inside the corner cone at 0
  std::vector<double> pair_gap;  // NaN while a pair is outside t * Omega
  double scaling_defect = 0.0;   // |S_{t Omega}(t q) - S_Omega(q)|
};

struct BlowupReport {
  std::vector<BlowupStage> stages;
  int first_box_inside = -1;
  double gap_at_final = std::numeric_limits<double>::quiet_NaN();
  double max_scaling_defect = 0.0;
};

// Dilation demonstration at the origin corner of an interval product:
// distances in the tube over t_k * Omega approach the corner-cone (orthant)
// tube distances, while S itself is exactly dilation invariant.
inline BlowupReport blowup_convergence_check(const BaseDomain& base, const Vec& x,
                                             const std::vector<double>& schedule,
                                             const std::vector<std::pair<CVec, CVec>>& pairs) {
  const Index n = base.dim();
  if (base.kind() != DomainKind::kIntervalProduct)
    throw ArgumentError("blowup_convergence_check: base must be a product of intervals");
  if (base.box_lo().lpNorm<Eigen::Infinity>() > 1e-12)
    throw ArgumentError("blowup_convergence_check: translate the base so the corner sits at 0");
  if (x.size() != n || x.lpNorm<Eigen::Infinity>() > 1e-12)
    throw ArgumentError("blowup_convergence_check: corner must be the origin");
  if (schedule.empty()) throw ArgumentError("blowup_convergence_check: empty schedule");

  const Vec hi = base.box_hi();
  for (const auto& [p, q] : pairs) {
    if (p.size() != n || q.size() != n)
      throw ArgumentError("blowup_convergence_check: probe pair dimension mismatch");
    if (p.real().minCoeff() <= 0.0 || q.real().minCoeff() <= 0.0)
      throw ArgumentError("blowup_convergence_check: probe pairs must lie over the open cone");
  }

  // Fixed quadruple in the tube over Omega for the dilation invariance of S.
  std::mt19937_64 gen(7u);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  std::uniform_real_distribution<double> imag(-1.0, 1.0);
  std::array<CVec, 4> quad;
  for (auto& point : quad) {
    point.resize(n);
    for (Index i = 0; i < n; ++i)
      point[i] = Complex(unit(gen) * hi[i], imag(gen));
  }
  const Vec zero = Vec::Zero(n);
  auto s_scaled = [&](double t) {
    auto d = [&](const CVec& a, const CVec& b) {
      return product_tube_distance(zero, (t * hi).eval(), (t * a).eval(), (t * b).eval());
    };
    return s_four_point(d, quad[0], quad[1], quad[2], quad[3]);
  };
  const double s_base = s_scaled(1.0);

  BlowupReport report;
  for (std::size_t idx = 0; idx < schedule.size(); ++idx) {
    const double t = schedule[idx];
    if (!(t > 0.0)) throw ArgumentError("blowup_convergence_check: schedule must be positive");
    BlowupStage stage;
    stage.k = static_cast<int>(idx);
    stage.t = t;
    stage.box_inside = ((t * hi).array() > 2.0).all();
    stage.inside_cone = hi.allFinite();
    if (stage.box_inside && report.first_box_inside < 0) report.first_box_inside = stage.k;

    stage.pair_gap.reserve(pairs.size());
    for (const auto& [p, q] : pairs) {
      const bool inside = (p.real().array() < t * hi.array()).all() &&
                          (q.real().array() < t * hi.array()).all();
      if (!inside) {
        stage.pair_gap.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      const double scaled = product_tube_distance(zero, (t * hi).eval(), p, q);
      stage.pair_gap.push_back(std::abs(scaled - orthant_tube_distance(p, q)));
    }

    stage.scaling_defect = std::abs(s_scaled(t) - s_base);
    report.max_scaling_defect = std::max(report.max_scaling_defect, stage.scaling_defect);
    report.stages.push_back(std::move(stage));
  }

  double final_gap = std::numeric_limits<double>::quiet_NaN();
  for (double g : report.stages.back().pair_gap)
    if (!std::isnan(g)) final_gap = std::isnan(final_gap) ? g : std::max(final_gap, g);
  report.gap_at_final = final_gap;
  return report;
}

enum class WitnessStrategy { kAnalyticSchedule, kRandomSearch };

struct WitnessSpace {
  enum class Kind { kPolydisc, kSquareTube, kSmoothBase };

  Kind kind = Kind::kPolydisc;
  std::optional<BaseDomain> base;

  static WitnessSpace polydisc() { return {}; }
  static WitnessSpace square_tube() {
    WitnessSpace s;
    s.kind = Kind::kSquareTube;
    return s;
  }
  static WitnessSpace smooth_base(BaseDomain dom) {
    WitnessSpace s;
    s.kind = Kind::kSmoothBase;
    s.base = std::move(dom);
    return s;
  }
};

struct WitnessOptions {
  WitnessStrategy strategy = WitnessStrategy::kAnalyticSchedule;
  double target = 10.0;
  int budget = 48;
  std::uint64_t seed = 24601;
  int degree = 3;  // disc degree for bounds-mode distances
};

struct WitnessSearchResult {
  std::vector<QuadrupleReport> entries;  // record setters; s() nondecreasing
  double best_s = 0.0;
  double target = 0.0;
  bool achieved = false;
  bool exhausted = false;  // budget ran out below the target level
  std::uint64_t seed = 0;
};

namespace detail {

inline Vec sample_interior(std::mt19937_64& gen, const BaseDomain& dom, double margin) {
  const Index n = dom.dim();
  Vec lo(n), hi(n);
  if (dom.kind() == DomainKind::kIntervalProduct) {
    lo = dom.box_lo();
    hi = dom.box_hi();
  } else {
    for (Index i = 0; i < n; ++i) {
      hi[i] = support_point(dom, Vec::Unit(n, i)).dot(Vec::Unit(n, i));
      lo[i] = support_point(dom, (-Vec::Unit(n, i)).eval()).dot(Vec::Unit(n, i));
    }
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    Vec p(n);
    for (Index i = 0; i < n; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * unit(gen);
    if (contains(dom, p, margin)) return p;
  }
  throw NumericError("sample_interior: rejection sampling failed", 0.0);
}

inline CVec sample_tube_point(std::mt19937_64& gen, const BaseDomain& dom, double margin,
                              double im_range) {
  const Vec re = sample_interior(gen, dom, margin);
  std::uniform_real_distribution<double> imag(-im_range, im_range);
  CVec p(dom.dim());
  for (Index i = 0; i < dom.dim(); ++i) p[i] = Complex(re[i], imag(gen));
  return p;
}

// Disc -> right half-plane per coordinate, then shrink into the unit square
// base. t = 2^{k+6} keeps the transported quadruple well inside (0,1)^2 so
// exact product-of-strips distances track the cone distances closely.
inline std::array<CVec, 4> square_tube_witness(double r, double t) {
  const QuadrupleReport disc = polydisc_witness(r);
  std::array<CVec, 4> out;
  for (int j = 0; j < 4; ++j) {
    CVec p(2);
    for (Index i = 0; i < 2; ++i) {
      const Complex zeta = disc.points[static_cast<std::size_t>(j)][i];
      p[i] = (1.0 + zeta) / (1.0 - zeta) / t;
    }
    out[static_cast<std::size_t>(j)] = p;
  }
  return out;
}

}  // namespace detail

// Searches for quadruples of large S. Exact model spaces use closed-form
// distances; smooth bases get sound [S_low, S_high] intervals from the
// affine lower bound and a certified disc upper bound. Entries are the
// running record setters, so s() is nondecreasing along the result.
inline WitnessSearchResult witness_search(const WitnessSpace& space, const WitnessOptions& opts) {
  if (opts.budget < 1) throw ArgumentError("witness_search: budget must be positive");
  if (!(opts.target > 0.0)) throw ArgumentError("witness_search: target must be positive");

  WitnessSearchResult result;
  result.target = opts.target;
  result.seed = opts.seed;
  std::mt19937_64 gen(opts.seed);

  auto record = [&](QuadrupleReport rep, int step, double parameter) {
    if (!result.entries.empty() && !(rep.s() > result.best_s)) return;
    rep.step = step;
    rep.parameter = parameter;
    result.best_s = rep.s();
    result.entries.push_back(std::move(rep));
    result.achieved = result.best_s >= opts.target;
  };

  const bool analytic = opts.strategy == WitnessStrategy::kAnalyticSchedule;
  switch (space.kind) {
    case WitnessSpace::Kind::kPolydisc: {
      std::uniform_real_distribution<double> coord(-0.95, 0.95);
      auto disc_coord = [&] {
        Complex zeta;
        do {
          zeta = Complex(coord(gen), coord(gen));
        } while (std::abs(zeta) > 0.95);
        return zeta;
      };
      for (int k = 1; k <= opts.budget && !result.achieved; ++k) {
        if (analytic) {
          const double r = 1.0 - std::ldexp(1.0, -k);
          record(polydisc_witness(r), k, r);
        } else {
          std::array<CVec, 4> q;
          for (auto& point : q) {
            point.resize(2);
            for (Index i = 0; i < 2; ++i) point[i] = disc_coord();
          }
          record(make_quadruple_report(polydisc_distance, q[0], q[1], q[2], q[3]), k,
                 std::numeric_limits<double>::quiet_NaN());
        }
      }
      break;
    }
    case WitnessSpace::Kind::kSquareTube: {
      const Vec lo = Vec::Zero(2);
      const Vec hi = Vec::Ones(2);
      auto d = [&](const CVec& a, const CVec& b) { return product_tube_distance(lo, hi, a, b); };
      const BaseDomain square = BaseDomain::interval_product(lo, hi);
      std::mt19937_64 rnd(opts.seed);
      for (int k = 1; k <= opts.budget && !result.achieved; ++k) {
        std::array<CVec, 4> q;
        double t = std::numeric_limits<double>::quiet_NaN();
        if (analytic) {
          t = std::ldexp(1.0, k + 6);
          q = detail::square_tube_witness(1.0 - std::ldexp(1.0, -k), t);
        } else {
          for (auto& point : q) point = detail::sample_tube_point(rnd, square, 0.02, 2.0);
        }
        record(make_quadruple_report(d, q[0], q[1], q[2], q[3]), k, t);
      }
      break;
    }
    case WitnessSpace::Kind::kSmoothBase: {
      if (!space.base) throw ArgumentError("witness_search: smooth mode needs a base domain");
      if (analytic)
        throw ArgumentError("witness_search: analytic schedules need an exact model space");
      const BaseDomain& dom = *space.base;
      LempertOptions quick;
      quick.stop_after_first = true;
      quick.s_tol = 1e-3;
      quick.inner_iterations = 8000;
      quick.stall_window = 1500;
      auto lo = [&](const CVec& a, const CVec& b) { return affine_lower_bound(dom, a, b); };
      auto up = [&](const CVec& a, const CVec& b) {
        const LempertBound ub = lempert_upper_bound(dom, a, b, opts.degree, quick);
        if (!ub.certified)
          throw NumericError("witness_search: no certified upper bound for a pair", 0.0);
        return ub.value;
      };
      for (int k = 1; k <= opts.budget && !result.achieved; ++k) {
        std::array<CVec, 4> q;
        for (auto& point : q) point = detail::sample_tube_point(gen, dom, 0.05, 0.75);
        try {
          record(make_quadruple_report_interval(lo, up, q[0], q[1], q[2], q[3]), k,
                 std::numeric_limits<double>::quiet_NaN());
        } catch (const NumericError&) {
          continue;  // un-boundable candidate; skip, keep searching
        }
      }
      break;
    }
  }

  result.exhausted = !result.achieved;
  return result;
}

}  // namespace tubegeo
