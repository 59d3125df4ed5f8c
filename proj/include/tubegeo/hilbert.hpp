#pragma once

// Hilbert metric of a bounded convex base, via the cross-ratio of the chord
// through the two points.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "tubegeo/base_domain.hpp"
#include "tubegeo/solver.hpp"
#include "tubegeo/types.hpp"

namespace tubegeo {

// h(x, y) = |log( |x-beta| |y-alpha| / (|x-alpha| |y-beta|) )| where alpha, beta are
// the exits of the chord through x and y, alpha on the far side of x. With arc-length
// parameters along the chord this is log( t_b (t_a + L) / (t_a (t_b - L)) ), L = |y-x|,
// which is nonnegative by construction, so no orientation bookkeeping is needed.
inline double hilbert_distance(const BaseDomain& dom, const Vec& x, const Vec& y) {
  if (!dom.bounded()) throw DomainError("hilbert_distance: base must be bounded");
  if (!(dom.rho(x) < 0.0) || !(dom.rho(y) < 0.0))
    throw ArgumentError("hilbert_distance: points must be interior");
  const double L = (y - x).norm();
  if (L == 0.0) return 0.0;
  const Vec d = (y - x) / L;
  const double tb = boundary_intersection(dom, x, d);    // chord exit beyond y
  const double ta = boundary_intersection(dom, x, -d);   // chord exit behind x
  return std::log((tb * (ta + L)) / (ta * (tb - L)));
}

struct HilbertCheckReport {
  int pairs = 0;
  int converged = 0;
  double min_slack = std::numeric_limits<double>::infinity();   // min of h - 2k
  double max_slack = -std::numeric_limits<double>::infinity();  // max of h - 2k
  double max_h = 0.0;
  double max_k = 0.0;
  bool pass = false;
};

// Samples real pairs in the tube and verifies h(x, y) >= 2 k(x + 0i, y + 0i)
// up to the solver tolerance 1e-5. Report-only: solver failures count as
// non-converged pairs and fail the batch.
inline HilbertCheckReport check_hilbert_inequality(const BaseDomain& dom, int pairs,
                                                   std::uint64_t seed = 613) {
  if (pairs < 1) throw ArgumentError("check_hilbert_inequality: need at least one pair");
  if (!dom.smooth() || !dom.bounded())
    throw DomainError("check_hilbert_inequality: base must be smooth and bounded");

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw = [&] {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      Vec x(dom.dim());
      for (Index i = 0; i < dom.dim(); ++i) x[i] = unit(gen);
      if (contains(dom, x, 0.05)) return x;
    }
    throw NumericError("check_hilbert_inequality: sampling failed", 0.0);
  };

  HilbertCheckReport rep;
  rep.pairs = pairs;
  for (int t = 0; t < pairs; ++t) {
    const Vec x = draw();
    const Vec y = draw();
    if ((x - y).norm() < 1e-8) {
      ++rep.converged;  // h and k both vanish; slack 0
      rep.min_slack = std::min(rep.min_slack, 0.0);
      rep.max_slack = std::max(rep.max_slack, 0.0);
      continue;
    }
    const double h = hilbert_distance(dom, x, y);
    double k = 0.0;
    try {
      k = kobayashi_distance(dom, x.cast<Complex>().eval(), y.cast<Complex>().eval());
    } catch (const NumericError&) {
      continue;
    }
    ++rep.converged;
    rep.min_slack = std::min(rep.min_slack, h - 2.0 * k);
    rep.max_slack = std::max(rep.max_slack, h - 2.0 * k);
    rep.max_h = std::max(rep.max_h, h);
    rep.max_k = std::max(rep.max_k, k);
  }
  rep.pass = rep.converged == rep.pairs && rep.min_slack >= -1e-5;
  return rep;
}

}  // namespace tubegeo
