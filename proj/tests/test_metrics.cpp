#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "tubegeo/hilbert.hpp"
#include "tubegeo/model_spaces.hpp"

using namespace tubegeo;

TEST_CASE("poincare distance: frozen values, invariance, stability") {
  CHECK(poincare(Complex(0.0), Complex(0.5)) == doctest::Approx(0.5493061443340549).epsilon(1e-14));
  CHECK(poincare(Complex(0.3, 0.1), Complex(0.3, 0.1)) == 0.0);

  auto g = oracles::rng(21);
  for (int k = 0; k < 200; ++k) {
    const Complex a(oracles::uniform(g, -0.7, 0.7), oracles::uniform(g, -0.7, 0.7));
    const Complex b(oracles::uniform(g, -0.7, 0.7), oracles::uniform(g, -0.7, 0.7));
    const Complex c(oracles::uniform(g, -0.7, 0.7), oracles::uniform(g, -0.7, 0.7));
    CHECK(poincare(a, b) == doctest::Approx(poincare(b, a)).epsilon(1e-14));
    CHECK(poincare(a, b) + poincare(b, c) >= poincare(a, c) - 1e-12);
    // Mobius invariance.
    CHECK(poincare(oracles::disc_mobius(c, a), oracles::disc_mobius(c, b)) ==
          doctest::Approx(poincare(a, b)).epsilon(1e-11));
  }

  // Double-angle identity at r = 1 - 2^-20: catastrophic cancellation would lose this.
  const double r = 1.0 - std::ldexp(1.0, -20);
  CHECK(poincare(Complex(r), Complex(-r)) == doctest::Approx(2.0 * atanh_stable(r)).epsilon(1e-13));

  CHECK_THROWS_AS(poincare(Complex(1.0), Complex(0.0)), ArgumentError);
}

TEST_CASE("halfplane tube distance") {
  // d(1, t) = |log t| / 2.
  CHECK(halfplane_distance(Complex(1.0), Complex(0.01)) ==
        doctest::Approx(0.5 * std::log(100.0)).epsilon(1e-13));

  // Dual route: Cayley transform to the disc.
  auto g = oracles::rng(22);
  auto cayley = [](Complex w) { return (1.0 - w) / (1.0 + w); };
  for (int k = 0; k < 200; ++k) {
    const Complex w(oracles::uniform(g, 0.05, 4.0), oracles::uniform(g, -3.0, 3.0));
    const Complex z(oracles::uniform(g, 0.05, 4.0), oracles::uniform(g, -3.0, 3.0));
    CHECK(halfplane_distance(w, z) == doctest::Approx(poincare(cayley(w), cayley(z))).epsilon(1e-11));
  }

  CHECK_THROWS_AS(halfplane_distance(Complex(-1.0), Complex(1.0)), ArgumentError);
}

TEST_CASE("strip tube distance") {
  // Dual route: u -> tan(pi u / 4) maps the strip {|Re u| < 1} onto the disc.
  auto g = oracles::rng(23);
  for (int k = 0; k < 200; ++k) {
    const Complex u(oracles::uniform(g, -0.9, 0.9), oracles::uniform(g, -2.0, 2.0));
    const Complex v(oracles::uniform(g, -0.9, 0.9), oracles::uniform(g, -2.0, 2.0));
    const Complex lu = std::tan(kPi * u / 4.0), lv = std::tan(kPi * v / 4.0);
    CHECK(strip_distance(-1.0, 1.0, u, v) == doctest::Approx(poincare(lu, lv)).epsilon(1e-11));

    // Affine normalization of a general interval.
    CHECK(strip_distance(2.0, 5.0, 3.5 + 1.5 * u, 3.5 + 1.5 * v) ==
          doctest::Approx(strip_distance(-1.0, 1.0, u, v)).epsilon(1e-12));
  }

  // Real pair: half the log-ratio of the mapped endpoints.
  const double d01 = strip_distance(0.0, 1.0, Complex(0.25), Complex(0.75));
  const double expect =
      0.5 * std::log(std::tan(kPi * 0.75 / 2.0) / std::tan(kPi * 0.25 / 2.0));
  CHECK(d01 == doctest::Approx(expect).epsilon(1e-13));

  // Large imaginary separation stays finite and hits the asymptote pi |dy| / 4.
  const double far = strip_distance(-1.0, 1.0, Complex(0.0), Complex(0.0, 1e6));
  CHECK(std::isfinite(far));
  CHECK(far == doctest::Approx(kPi * 1e6 / 4.0).epsilon(1e-9));

  CHECK_THROWS_AS(strip_distance(-1.0, 1.0, Complex(2.0), Complex(0.0)), ArgumentError);
}

TEST_CASE("interval and product tubes") {
  constexpr double inf = std::numeric_limits<double>::infinity();
  CHECK(interval_tube_distance(-inf, inf, Complex(1.0), Complex(-50.0, 3.0)) == 0.0);
  CHECK(interval_tube_distance(0.0, inf, Complex(1.0), Complex(2.0, 1.0)) ==
        doctest::Approx(halfplane_distance(Complex(1.0), Complex(2.0, 1.0))).epsilon(1e-14));
  CHECK(interval_tube_distance(-inf, 2.0, Complex(1.0), Complex(0.0)) ==
        doctest::Approx(halfplane_distance(Complex(1.0), Complex(2.0))).epsilon(1e-14));

  const Vec lo{{0.0, -1.0}}, hi{{1.0, 1.0}};
  const CVec w{{Complex(0.25), Complex(0.0)}}, z{{Complex(0.75), Complex(0.1, 0.2)}};
  const double d = product_tube_distance(lo, hi, w, z);
  CHECK(d == doctest::Approx(std::max(strip_distance(0.0, 1.0, w[0], z[0]),
                                      strip_distance(-1.0, 1.0, w[1], z[1]))).epsilon(1e-14));

  const CVec hw{{Complex(1.0), Complex(1.0)}}, hz{{Complex(0.01), Complex(1.0, 0.5)}};
  CHECK(orthant_tube_distance(hw, hz) ==
        doctest::Approx(std::max(halfplane_distance(hw[0], hz[0]), halfplane_distance(hw[1], hz[1])))
            .epsilon(1e-14));
}

TEST_CASE("polydisc and ball distances") {
  const CVec w{{Complex(0.5), Complex(0.0)}}, z{{Complex(0.0), Complex(0.5)}};
  CHECK(polydisc_distance(w, z) == doctest::Approx(atanh_stable(0.5)).epsilon(1e-14));

  CHECK(ball_distance(CVec::Zero(2), CVec{{Complex(0.5), Complex(0.0)}}) ==
        doctest::Approx(atanh_stable(0.5)).epsilon(1e-13));

  // Dual route: explicit Mobius automorphism moving z to the origin.
  auto g = oracles::rng(24);
  for (int k = 0; k < 200; ++k) {
    CVec a = oracles::random_cvec(g, 3, 0.5), b = oracles::random_cvec(g, 3, 0.5);
    if (a.norm() >= 0.95 || b.norm() >= 0.95) continue;
    const double via_mobius = atanh_stable(std::min(1.0 - 1e-16, oracles::ball_mobius(a, b).norm()));
    CHECK(ball_distance(a, b) == doctest::Approx(via_mobius).epsilon(1e-10));
    CHECK(ball_distance(a, b) == doctest::Approx(ball_distance(b, a)).epsilon(1e-13));
    const CVec c = oracles::random_cvec(g, 3, 0.5);
    if (c.norm() < 0.95)
      CHECK(ball_distance(a, b) + ball_distance(b, c) >= ball_distance(a, c) - 1e-12);
  }
}

TEST_CASE("model_distance dispatch") {
  CHECK(model_distance(ModelSpace::disc(), CVec{{Complex(0.0)}}, CVec{{Complex(0.5)}}) ==
        doctest::Approx(atanh_stable(0.5)).epsilon(1e-14));
  CHECK(model_distance(ModelSpace::orthant_tube(2), CVec{{Complex(1.0), Complex(1.0)}},
                       CVec{{Complex(3.0), Complex(1.0)}}) ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-13));
  const ModelSpace strip = ModelSpace::strip_tube(0.0, 1.0);
  CHECK(model_distance(strip, CVec{{Complex(0.25)}}, CVec{{Complex(0.75)}}) ==
        doctest::Approx(strip_distance(0.0, 1.0, Complex(0.25), Complex(0.75))).epsilon(1e-14));
  CHECK_THROWS_AS(model_distance(ModelSpace::polydisc(2), CVec::Zero(3), CVec::Zero(3)),
                  ArgumentError);
}

TEST_CASE("hilbert distance: frozen values and identities") {
  const BaseDomain ball = BaseDomain::ball(2);
  CHECK(hilbert_distance(ball, Vec::Zero(2), Vec::Zero(2)) == 0.0);
  // h(0, t e1) on the ball: log((1+t)/(1-t)).
  CHECK(hilbert_distance(ball, Vec::Zero(2), Vec{{0.5, 0.0}}) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));

  // Collinear identity h(s a, t a) = 2 p(s, t) for a unit vector a.
  auto g = oracles::rng(25);
  for (int k = 0; k < 100; ++k) {
    const Vec a = oracles::random_unit(g, 2);
    const double s = oracles::uniform(g, -0.9, 0.9), t = oracles::uniform(g, -0.9, 0.9);
    CHECK(hilbert_distance(ball, (s * a).eval(), (t * a).eval()) ==
          doctest::Approx(2.0 * poincare(Complex(s), Complex(t))).epsilon(1e-9));
  }

  // Symmetry and triangle inequality on an ellipsoid.
  const BaseDomain ell = BaseDomain::ellipsoid(Vec{{1.0, 0.5}});
  for (int k = 0; k < 100; ++k) {
    const Vec x = oracles::random_interior(g, ell, 0.01);
    const Vec y = oracles::random_interior(g, ell, 0.01);
    const Vec z = oracles::random_interior(g, ell, 0.01);
    const double hxy = hilbert_distance(ell, x, y);
    CHECK(hxy == doctest::Approx(hilbert_distance(ell, y, x)).epsilon(1e-11));
    CHECK(hxy + hilbert_distance(ell, y, z) >= hilbert_distance(ell, x, z) - 1e-9);
  }

  CHECK_THROWS_AS(hilbert_distance(ball, Vec{{2.0, 0.0}}, Vec::Zero(2)), ArgumentError);
}

TEST_CASE("hilbert distance is invariant under affine images") {
  auto g = oracles::rng(26);
  const BaseDomain ell = BaseDomain::ellipsoid(Vec{{1.0, 0.5}});
  Mat A(2, 2);
  A << 1.3, 0.4, -0.2, 0.8;
  const Vec c{{0.3, -0.7}};
  const BaseDomain image = affinely_transformed(ell, A, c);
  for (int k = 0; k < 50; ++k) {
    const Vec x = oracles::random_interior(g, ell, 0.02);
    const Vec y = oracles::random_interior(g, ell, 0.02);
    CHECK(hilbert_distance(image, (A * x + c).eval(), (A * y + c).eval()) ==
          doctest::Approx(hilbert_distance(ell, x, y)).epsilon(1e-9));
  }

  // Box cross-ratios work through the half-space exit form as well.
  const BaseDomain box = BaseDomain::interval_product(Vec{{0.0, 0.0}}, Vec{{1.0, 1.0}});
  CHECK(hilbert_distance(box, Vec{{0.25, 0.5}}, Vec{{0.75, 0.5}}) ==
        doctest::Approx(std::log((0.75 / 0.25) * (0.75 / 0.25))).epsilon(1e-12));
}

TEST_CASE("hilbert dominates twice the kobayashi distance on real pairs") {
  const BaseDomain ball = BaseDomain::ball(2);

  // Frozen axis pair: h = log 3 while k = atanh(tan(pi/8)), so the slack is ~0.22.
  const double h = hilbert_distance(ball, Vec::Zero(2), Vec{{0.5, 0.0}});
  const double k =
      kobayashi_distance(ball, CVec::Zero(2), CVec{{Complex(0.5), Complex(0.0)}});
  CHECK(h == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(k == doctest::Approx(0.44068679350977147).epsilon(1e-7));
  CHECK(h - 2.0 * k > 0.2);

  const HilbertCheckReport rep = check_hilbert_inequality(ball, 25, 613);
  CHECK(rep.pairs == 25);
  CHECK(rep.converged == 25);
  CHECK(rep.min_slack >= -1e-5);
  CHECK(rep.max_h >= 2.0 * rep.max_k - 1e-5);
  CHECK(rep.pass);

  const HilbertCheckReport squeezed =
      check_hilbert_inequality(BaseDomain::ellipsoid(Vec{{1.2, 0.7}}), 25, 12);
  CHECK(squeezed.pass);
  CHECK(squeezed.max_k > 0.0);

  CHECK_THROWS_AS(check_hilbert_inequality(ball, 0), ArgumentError);
  CHECK_THROWS_AS(
      check_hilbert_inequality(BaseDomain::interval_product(Vec{{0.0}}, Vec{{1.0}}), 5),
      DomainError);
}
