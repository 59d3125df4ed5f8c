#pragma once

// Exact biholomorphic reference models: the paraboloid-base tube realized as
// the Siegel domain (unbounded realization of the ball) and the involution
// carrying the tube over {x in (0,inf)^2 : x1 x2 > 1} onto a union of
// bidiscs. Both give closed-form Kobayashi distances used as oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "tubegeo/base_domain.hpp"
#include "tubegeo/bounds.hpp"
#include "tubegeo/model_spaces.hpp"
#include "tubegeo/types.hpp"

namespace tubegeo {

enum class ModelMapTag { kSiegelParaboloid, kExample2Involution, kCayleyComponentwise };

struct ModelMap {
  ModelMapTag tag = ModelMapTag::kSiegelParaboloid;
  std::function<CVec(const CVec&)> forward;
  std::function<CVec(const CVec&)> inverse;
};

// z -> (z1 - z2^2/2, z2/sqrt(2)) sends the tube over {x1 > x2^2} onto the
// Siegel domain {Re w1 > |w2|^2}; the margin identity
// Re w1 - |w2|^2 = Re z1 - (Re z2)^2 is exact.
inline CVec siegel_map(const CVec& z) {
  if (z.size() != 2) throw ArgumentError("siegel_map: need dimension 2");
  CVec w(2);
  w[0] = z[0] - 0.5 * z[1] * z[1];
  w[1] = z[1] / std::sqrt(2.0);
  return w;
}

inline CVec siegel_map_inverse(const CVec& w) {
  if (w.size() != 2) throw ArgumentError("siegel_map_inverse: need dimension 2");
  CVec z(2);
  z[1] = std::sqrt(2.0) * w[1];
  z[0] = w[0] + w[1] * w[1];
  return z;
}

// Cayley transform between the unit ball and the Siegel domain.
inline CVec ball_to_siegel(const CVec& zeta) {
  if (zeta.size() != 2) throw ArgumentError("ball_to_siegel: need dimension 2");
  if (zeta.norm() >= 1.0) throw ArgumentError("ball_to_siegel: point outside the ball");
  CVec w(2);
  w[0] = (1.0 - zeta[0]) / (1.0 + zeta[0]);
  w[1] = zeta[1] / (1.0 + zeta[0]);
  return w;
}

inline CVec siegel_to_ball(const CVec& w) {
  if (w.size() != 2) throw ArgumentError("siegel_to_ball: need dimension 2");
  if (!(w[0].real() > std::norm(w[1])))
    throw ArgumentError("siegel_to_ball: point outside the Siegel domain");
  CVec zeta(2);
  zeta[0] = (1.0 - w[0]) / (1.0 + w[0]);
  zeta[1] = 2.0 * w[1] / (1.0 + w[0]);
  return zeta;
}

inline double siegel_distance(const CVec& w, const CVec& z) {
  return ball_distance(siegel_to_ball(w), siegel_to_ball(z));
}

// Exact Kobayashi distance on the tube over {x1 > x2^2}, pulled back through
// the Siegel realization and the Cayley transform to the ball model.
inline double paraboloid_tube_distance(const CVec& z, const CVec& w) {
  return siegel_distance(siegel_map(z), siegel_map(w));
}

// Componentwise z -> (1-z)/(1+z). An involution; maps the tube over
// {x in (0,inf)^2 : x1 x2 > 1} into the bidisc. The printed form of this map
// in the source example divides the first coordinate by 1 + z2; that variant
// is kept available as a negative control (it is not an involution).
inline CVec example2_map(const CVec& z, bool printed_variant = false) {
  if (z.size() != 2) throw ArgumentError("example2_map: need dimension 2");
  CVec w(2);
  const Complex den0 = printed_variant ? (1.0 + z[1]) : (1.0 + z[0]);
  w[0] = (1.0 - z[0]) / den0;
  w[1] = (1.0 - z[1]) / (1.0 + z[1]);
  return w;
}

inline ModelMap make_model_map(ModelMapTag tag) {
  ModelMap map;
  map.tag = tag;
  switch (tag) {
    case ModelMapTag::kSiegelParaboloid:
      map.forward = [](const CVec& z) { return siegel_map(z); };
      map.inverse = [](const CVec& w) { return siegel_map_inverse(w); };
      break;
    case ModelMapTag::kExample2Involution:
      map.forward = [](const CVec& z) { return example2_map(z); };
      map.inverse = [](const CVec& z) { return example2_map(z); };
      break;
    case ModelMapTag::kCayleyComponentwise:
      map.forward = [](const CVec& z) {
        CVec w(z.size());
        for (Index i = 0; i < z.size(); ++i) w[i] = (1.0 + z[i]) / (1.0 - z[i]);
        return w;
      };
      map.inverse = [](const CVec& w) {
        CVec z(w.size());
        for (Index i = 0; i < w.size(); ++i) z[i] = (w[i] - 1.0) / (w[i] + 1.0);
        return z;
      };
      break;
  }
  return map;
}

struct SiegelOptions {
  int triples = 100;
  std::uint64_t seed = 41;
};

struct SiegelReport {
  int triples = 0;
  int skipped = 0;
  int image_in_domain = 0;
  double min_image_margin = std::numeric_limits<double>::infinity();
  double max_axiom_defect = 0.0;        // identity, symmetry, triangle inequality
  double max_slice_defect = 0.0;        // x2 = 0 slice vs half-plane distance
  double max_affine_gap = -std::numeric_limits<double>::infinity();  // lb - d
  double max_translation_defect = 0.0;  // imaginary translation invariance
  bool pass = false;
};

namespace detail {

inline CVec sample_paraboloid_tube(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> x2(-1.5, 1.5);
  std::uniform_real_distribution<double> gap(0.05, 3.0);
  std::uniform_real_distribution<double> im(-2.0, 2.0);
  CVec z(2);
  const double re2 = x2(gen);
  z[1] = Complex(re2, im(gen));
  z[0] = Complex(re2 * re2 + gap(gen), im(gen));
  return z;
}

}  // namespace detail

inline SiegelReport siegel_check(const SiegelOptions& opts = {}) {
  if (opts.triples < 1) throw ArgumentError("siegel_check: need at least one triple");
  const BaseDomain dom = BaseDomain::paraboloid();
  std::mt19937_64 gen(opts.seed);
  std::uniform_real_distribution<double> im(-2.0, 2.0);
  std::uniform_real_distribution<double> re(0.05, 3.0);

  SiegelReport rep;
  rep.triples = opts.triples;
  for (int t = 0; t < opts.triples; ++t) {
    CVec a = detail::sample_paraboloid_tube(gen);
    CVec b = detail::sample_paraboloid_tube(gen);
    CVec c = detail::sample_paraboloid_tube(gen);
    if (!contains(dom, a.real()) || !contains(dom, b.real()) || !contains(dom, c.real())) {
      ++rep.skipped;
      continue;
    }

    for (const CVec* p : {&a, &b, &c}) {
      const CVec w = siegel_map(*p);
      const double margin = w[0].real() - std::norm(w[1]);
      rep.min_image_margin = std::min(rep.min_image_margin, margin);
      if (margin > 0.0) ++rep.image_in_domain;
    }

    const double dab = paraboloid_tube_distance(a, b);
    const double dba = paraboloid_tube_distance(b, a);
    const double dbc = paraboloid_tube_distance(b, c);
    const double dac = paraboloid_tube_distance(a, c);
    rep.max_axiom_defect = std::max({rep.max_axiom_defect, std::abs(dab - dba),
                                     paraboloid_tube_distance(a, a),
                                     std::max(0.0, dac - dab - dbc)});

    // Slice pair: both points on {z2 = 0}, where the model retracts to the
    // half-plane {Re z1 > 0}.
    CVec s1 = CVec::Zero(2), s2 = CVec::Zero(2);
    s1[0] = Complex(re(gen), im(gen));
    s2[0] = Complex(re(gen), im(gen));
    rep.max_slice_defect =
        std::max(rep.max_slice_defect,
                 std::abs(paraboloid_tube_distance(s1, s2) - halfplane_distance(s1[0], s2[0])));

    rep.max_affine_gap = std::max(rep.max_affine_gap, affine_lower_bound(dom, a, b) - dab);

    CVec shift(2);
    shift << Complex(0.0, im(gen)), Complex(0.0, im(gen));
    rep.max_translation_defect =
        std::max(rep.max_translation_defect,
                 std::abs(paraboloid_tube_distance((a + shift).eval(), (b + shift).eval()) - dab));
  }

  rep.pass = rep.skipped == 0 && rep.image_in_domain == 3 * (opts.triples - rep.skipped) &&
             rep.min_image_margin > 0.0 && rep.max_axiom_defect <= 1e-10 &&
             rep.max_slice_defect <= 1e-10 && rep.max_affine_gap <= 1e-9 &&
             rep.max_translation_defect <= 1e-12;
  return rep;
}

// Membership in the union of bidiscs D((x-1)/2, (1+x)/2) x D(-(x+1)/2, (1-x)/2)
// over x in (-1,1). The separation margin is concave in x (affine radius minus
// a convex norm), so a ternary search finds its maximizer.
struct BidiscWitness {
  bool member = false;
  double x = 0.0;
  double margin = -std::numeric_limits<double>::infinity();
};

inline BidiscWitness bidisc_union_witness(const CVec& w) {
  if (w.size() != 2) throw ArgumentError("bidisc_union_witness: need dimension 2");
  auto margin = [&](double x) {
    const double m1 = 0.5 * (1.0 + x) - std::abs(w[0] - Complex(0.5 * (x - 1.0), 0.0));
    const double m2 = 0.5 * (1.0 - x) - std::abs(w[1] - Complex(-0.5 * (x + 1.0), 0.0));
    return std::min(m1, m2);
  };
  double lo = -1.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (margin(m1) < margin(m2))
      lo = m1;
    else
      hi = m2;
  }
  BidiscWitness wit;
  wit.x = 0.5 * (lo + hi);
  wit.margin = margin(wit.x);
  wit.member = wit.margin > 0.0;
  return wit;
}

inline bool example2_inequality(const CVec& w) {
  return (1.0 - std::norm(w[0])) * (1.0 - std::norm(w[1])) >
         std::norm(1.0 + w[0]) * std::norm(1.0 + w[1]);
}

struct Example2Options {
  int samples = 1000;
  std::uint64_t seed = 97;
  bool printed_variant = false;  // negative control: the non-involutive map
};

struct Example2Report {
  int samples = 0;
  int in_bidisc = 0;
  int inequality_pass = 0;
  int member_pass = 0;
  int involution_pass = 0;
  int midpoint_pass = 0;
  int equivalence_pass = 0;  // bidisc-union membership agrees with the inequality
  int equivalence_total = 0;
  int boundary_pass = 0;
  int boundary_total = 0;
  double max_involution_defect = 0.0;
  double max_boundary_defect = 0.0;
  bool printed_variant = false;
  bool pass = false;
};

inline Example2Report example2_check(const Example2Options& opts = {}) {
  if (opts.samples < 1) throw ArgumentError("example2_check: need at least one sample");
  std::mt19937_64 gen(opts.seed);
  std::uniform_real_distribution<double> x1_draw(0.2, 4.0);
  std::uniform_real_distribution<double> gap(0.05, 3.0);
  std::uniform_real_distribution<double> im(-2.5, 2.5);
  std::uniform_real_distribution<double> unit(-0.999, 0.999);

  Example2Report rep;
  rep.samples = opts.samples;
  rep.printed_variant = opts.printed_variant;

  CVec prev_image;
  for (int t = 0; t < opts.samples; ++t) {
    CVec z(2);
    const double x1 = x1_draw(gen);
    z[0] = Complex(x1, im(gen));
    z[1] = Complex(1.0 / x1 + gap(gen), im(gen));

    const CVec w = example2_map(z, opts.printed_variant);
    const bool in_bidisc = std::abs(w[0]) < 1.0 && std::abs(w[1]) < 1.0;
    const bool ineq = example2_inequality(w);
    const BidiscWitness wit = bidisc_union_witness(w);
    if (in_bidisc) ++rep.in_bidisc;
    if (ineq) ++rep.inequality_pass;
    if (wit.member) ++rep.member_pass;
    ++rep.equivalence_total;
    if (wit.member == ineq) ++rep.equivalence_pass;

    const double inv_defect =
        (example2_map(w, opts.printed_variant) - z).lpNorm<Eigen::Infinity>();
    rep.max_involution_defect = std::max(rep.max_involution_defect, inv_defect);
    if (inv_defect <= 1e-12) ++rep.involution_pass;

    if (t > 0) {
      const CVec mid = 0.5 * (w + prev_image);
      if (example2_inequality(mid)) ++rep.midpoint_pass;
    }
    prev_image = w;

    // Boundary correspondence: Re z1 Re z2 = 1 maps to equality in the
    // defining inequality.
    CVec zb(2);
    const double t1 = x1_draw(gen);
    zb[0] = Complex(t1, im(gen));
    zb[1] = Complex(1.0 / t1, im(gen));
    const CVec wb = example2_map(zb, opts.printed_variant);
    const double defect = std::abs((1.0 - std::norm(wb[0])) * (1.0 - std::norm(wb[1])) -
                                   std::norm(1.0 + wb[0]) * std::norm(1.0 + wb[1]));
    rep.max_boundary_defect = std::max(rep.max_boundary_defect, defect);
    ++rep.boundary_total;
    if (defect <= 1e-9) ++rep.boundary_pass;

    // Exterior probes keep the equivalence check two-sided.
    CVec probe(2);
    probe << Complex(unit(gen), unit(gen)), Complex(unit(gen), unit(gen));
    if (std::abs(probe[0]) < 1.0 && std::abs(probe[1]) < 1.0) {
      ++rep.equivalence_total;
      if (bidisc_union_witness(probe).member == example2_inequality(probe))
        ++rep.equivalence_pass;
    }
  }

  rep.pass = rep.in_bidisc == rep.samples && rep.inequality_pass == rep.samples &&
             rep.member_pass == rep.samples && rep.involution_pass == rep.samples &&
             rep.midpoint_pass == rep.samples - 1 &&
             rep.equivalence_pass == rep.equivalence_total &&
             rep.boundary_pass == rep.boundary_total && rep.max_boundary_defect <= 1e-9;
  return rep;
}

}  // namespace tubegeo
