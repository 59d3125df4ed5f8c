#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "tubegeo/boundary_limits.hpp"
#include "tubegeo/schwarz.hpp"

using namespace tubegeo;

namespace {

GeodesicParams params2(Complex a1, Complex a2, double b1, double b2) {
  CVec a(2);
  a << a1, a2;
  Vec b(2);
  b << b1, b2;
  return make_params(a, b);
}

// Midpoint-rule Schwarz integral, for cross-checking the production quadrature
// at moderate radii. Skips nothing: the grid never hits a singular angle.
CVec riemann_schwarz(const std::function<Vec(double)>& g, Index n, Complex lambda, Index m) {
  CVec acc = CVec::Zero(n);
  for (Index j = 0; j < m; ++j) {
    const double t = 2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(m);
    const Complex xi(std::cos(t), std::sin(t));
    acc += (xi + lambda) / (xi - lambda) * g(t).cast<Complex>();
  }
  return acc * (2.0 * kPi / static_cast<double>(m)) / (2.0 * kPi);
}

}  // namespace

TEST_CASE("constant profile reproduces the constant plus the imaginary shift") {
  Vec c(2);
  c << 0.7, -0.3;
  Mat values(2, 512);
  values.colwise() = c;
  const BoundaryProfile bp = BoundaryProfile::from_samples(values);
  Vec im(2);
  im << 0.25, 1.5;
  const GeodesicEvaluator f(bp, im);
  auto gen = oracles::rng(210);
  for (int k = 0; k < 20; ++k) {
    const double r = oracles::uniform(gen, 0.0, 0.99);
    const double t = oracles::uniform(gen, 0.0, 2.0 * kPi);
    const CVec v = f(Complex(r * std::cos(t), r * std::sin(t)));
    CHECK((v.real() - c).norm() < 1e-12);
    CHECK((v.imag() - im).norm() < 1e-12);
  }
  CHECK((f.mean() - c).norm() < 1e-13);
}

TEST_CASE("circular boundary data integrates to f(lambda) = (lambda, i lambda)") {
  const BaseDomain ball = BaseDomain::ball(2);
  const GeodesicParams p = params2(Complex(0.5, 0.0), Complex(0.0, 0.5), 0.0, 0.0);
  const GeodesicEvaluator f(ball, p);
  CHECK(f.label() == FCaseLabel::kCircleEmbedding);
  auto gen = oracles::rng(211);
  for (int k = 0; k < 40; ++k) {
    const double r = oracles::uniform(gen, 0.0, 0.995);
    const double t = oracles::uniform(gen, 0.0, 2.0 * kPi);
    const Complex lambda(r * std::cos(t), r * std::sin(t));
    const CVec v = f(lambda);
    CHECK(std::abs(v[0] - lambda) < 1e-11);
    CHECK(std::abs(v[1] - Complex(0.0, 1.0) * lambda) < 1e-11);
  }
  CHECK(f.mean().norm() < 1e-13);
}

TEST_CASE("two-arc slice matches the hyperbolic-arctangent closed form to extreme radii") {
  Vec xp(1), xm(1);
  xp << 1.0;
  xm << -1.0;
  // g = sign(sin t): f(lambda) = -(4i/pi) atanh(lambda), diverging along the real
  // axis. The arc endpoints 0 and pi keep the closed-form comparison free of
  // endpoint quantization at the probe angles.
  const BoundaryProfile bp = BoundaryProfile::from_two_arcs(0.0, kPi, xp, xm);
  const GeodesicEvaluator f(bp, Vec::Zero(1));
  CHECK(f.piecewise_constant());

  auto gen = oracles::rng(212);
  for (int k = 0; k < 40; ++k) {
    const double r = oracles::uniform(gen, 0.0, 0.9999);
    const double t = oracles::uniform(gen, 0.0, 2.0 * kPi);
    const Complex lambda(r * std::cos(t), r * std::sin(t));
    const Complex expected = Complex(0.0, -4.0 / kPi) * std::atanh(lambda);
    CHECK(std::abs(f(lambda)[0] - expected) < 1e-11);
  }

  // Along the real axis Im f(r) = -(2/pi) log((1+r)/(1-r)); push r to an ulp off 1.
  for (double eps : {1e-6, 1e-12, 1e-15, std::numeric_limits<double>::epsilon()}) {
    const double r = 1.0 - eps;
    REQUIRE(r < 1.0);
    const CVec v = f(Complex(r, 0.0));
    const double expected = -(2.0 / kPi) * (std::log1p(r) - std::log1p(-r));
    CHECK(std::abs(v[0].real()) < 1e-12);
    CHECK(v[0].imag() == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(std::abs(f.mean()[0]) < 1e-15);
}

TEST_CASE("quadrature paths agree with each other and with a Riemann sum") {
  Vec axes(2);
  axes << 1.0, 0.7;
  const BaseDomain dom = BaseDomain::ellipsoid(axes);
  const GeodesicParams p = params2(Complex(0.45, 0.1), Complex(-0.15, 0.5), 0.05, 0.1);
  const GeodesicEvaluator fourier(dom, p);

  EvalOptions force_panels;
  force_panels.panel_threshold = 1e9;  // divert the smooth path onto panels
  const GeodesicEvaluator panels(dom, p, force_panels);

  const BoundaryProfile bp = boundary_profile(dom, p);
  auto gen = oracles::rng(213);
  for (int k = 0; k < 15; ++k) {
    const double r = oracles::uniform(gen, 0.0, 0.95);
    const double t = oracles::uniform(gen, 0.0, 2.0 * kPi);
    const Complex lambda(r * std::cos(t), r * std::sin(t));
    const CVec a = fourier(lambda);
    const CVec b = panels(lambda);
    CHECK((a - b).norm() < 1e-9);
    if (k < 5) {
      const CVec c = riemann_schwarz(bp.sampler, 2, lambda, 1 << 16);
      CHECK((a - c).norm() < 1e-6);
    }
  }
  CHECK((fourier.mean() - panels.mean()).norm() < 1e-11);
}

TEST_CASE("half-circle data agrees with a dense Riemann sum at moderate radii") {
  const BaseDomain ball = BaseDomain::ball(2);
  const GeodesicParams p = params2(Complex(0.5, 0.0), Complex(0.0, 0.5), -1.0, 0.0);
  const GeodesicEvaluator f(ball, p);
  CHECK(f.label() == FCaseLabel::kOpenSemicircle);
  const BoundaryProfile bp = boundary_profile(ball, p);
  auto gen = oracles::rng(214);
  for (int k = 0; k < 6; ++k) {
    const double r = oracles::uniform(gen, 0.0, 0.8);
    const double t = oracles::uniform(gen, 0.0, 2.0 * kPi);
    const Complex lambda(r * std::cos(t), r * std::sin(t));
    const CVec a = f(lambda);
    const CVec c = riemann_schwarz(bp.sampler, 2, lambda, 1 << 18);
    CHECK((a - c).norm() < 2e-5);
  }
}

TEST_CASE("grid refinement is converged at the default settings") {
  const BaseDomain ball = BaseDomain::ball(2);
  const GeodesicParams p = params2(Complex(0.45, 0.1), Complex(-0.15, 0.5), 0.05, 0.1);
  EvalOptions coarse;
  coarse.min_grid = 512;
  EvalOptions fine;
  fine.min_grid = 2048;
  const GeodesicEvaluator f1(ball, p, coarse);
  const GeodesicEvaluator f2(ball, p, fine);
  for (double t : {0.3, 1.7, 4.1}) {
    const Complex lambda = 0.9 * Complex(std::cos(t), std::sin(t));
    CHECK((f1(lambda) - f2(lambda)).norm() < 1e-9);
  }
}

TEST_CASE("symmetrization averages conjugate evaluations") {
  Vec axes(2);
  axes << 1.0, 0.7;
  const BaseDomain dom = BaseDomain::ellipsoid(axes);
  const GeodesicParams p = params2(Complex(0.45, 0.1), Complex(-0.15, 0.5), 0.05, 0.1);
  const GeodesicEvaluator f(dom, p);
  const GeodesicEvaluator fs = f.symmetrized();
  CHECK(fs.is_symmetrized());
  auto gen = oracles::rng(215);
  for (int k = 0; k < 10; ++k) {
    const double r = oracles::uniform(gen, 0.0, 0.95);
    const double t = oracles::uniform(gen, 0.0, 2.0 * kPi);
    const Complex lambda(r * std::cos(t), r * std::sin(t));
    const CVec expected = 0.5 * (f(lambda) + f(std::conj(lambda)).conjugate());
    CHECK((fs(lambda) - expected).norm() < 1e-14);
  }
  // A conjugation-symmetric map is unchanged: f = (lambda, i lambda) has real
  // coefficients, so only the second component flips sign in the average.
}

TEST_CASE("boundary values are recoverable from the evaluator") {
  const BaseDomain ball = BaseDomain::ball(2);
  const GeodesicParams p = params2(Complex(0.5, 0.0), Complex(0.0, 0.5), 0.0, 0.0);
  const GeodesicEvaluator f(ball, p);
  const Vec g = f.boundary_value(0.77);
  CHECK(g[0] == doctest::Approx(std::cos(0.77)).epsilon(1e-10));
  CHECK(g[1] == doctest::Approx(-std::sin(0.77)).epsilon(1e-10));

  // Sampler-free profile: the stored Fourier series evaluates g on the circle.
  Mat values(2, 1024);
  for (Index j = 0; j < values.cols(); ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / 1024.0;
    values(0, j) = std::cos(t) + 0.2 * std::cos(2.0 * t);
    values(1, j) = -std::sin(t) + 0.1;
  }
  const GeodesicEvaluator h(BoundaryProfile::from_samples(values), Vec::Zero(2));
  const Vec gh = h.boundary_value(1.1);
  CHECK(gh[0] == doctest::Approx(std::cos(1.1) + 0.2 * std::cos(2.2)).epsilon(1e-10));
  CHECK(gh[1] == doctest::Approx(-std::sin(1.1) + 0.1).epsilon(1e-10));
}

TEST_CASE("evaluation domain guards") {
  Vec c(1);
  c << 1.0;
  Mat values(1, 64);
  values.setOnes();
  const GeodesicEvaluator f(BoundaryProfile::from_samples(values), Vec::Zero(1));
  CHECK_THROWS_AS(f(Complex(1.0, 0.0)), ArgumentError);
  CHECK_THROWS_AS(f(Complex(0.0, 1.2)), ArgumentError);
  CHECK_THROWS_AS(f(Complex(1.0 - 1e-14, 0.0)), ArgumentError);

  // Gapped sample grids cannot be integrated.
  BoundaryProfile gap = BoundaryProfile::from_samples(values);
  gap.has_value[3] = false;
  CHECK_THROWS_AS(GeodesicEvaluator(gap, Vec::Zero(1)), ArgumentError);
}

TEST_CASE("radial boundary report for the continuous case") {
  const BaseDomain ball = BaseDomain::ball(2);
  const GeodesicParams p = params2(Complex(0.5, 0.0), Complex(0.0, 0.5), 0.0, 0.0);
  const GeodesicEvaluator f(ball, p);
  const BoundaryLimitReport rep = boundary_limits(ball, f);
  CHECK(rep.continuous);
  CHECK(rep.max_boundary_defect < 1e-6);
  CHECK(rep.max_profile_mismatch < 1e-6);
  CHECK(rep.singular.empty());
}

TEST_CASE("radial boundary report for the two-arc case") {
  Vec xp(1), xm(1);
  xp << -1.0;
  xm << 1.0;
  const BoundaryProfile bp = BoundaryProfile::from_two_arcs(kPi / 2.0, 3.0 * kPi / 2.0, xp, xm);
  const GeodesicEvaluator f(bp, Vec::Zero(1));
  const BaseDomain base = BaseDomain::ball(1);
  LimitOptions opts;
  opts.divergence_threshold = 10.0;  // a unit-size jump crosses 10 at representable radii
  const BoundaryLimitReport rep = boundary_limits(base, f, opts);
  CHECK_FALSE(rep.continuous);
  REQUIRE(rep.singular.size() == 2);

  // At pi/2 the jump runs from +1 to -1; the radial real limit is the midpoint 0.
  const SingularAngleReport& s0 = rep.singular[0];
  CHECK(s0.angle == doctest::Approx(kPi / 2.0));
  CHECK((s0.x_before - xm).norm() < 1e-12);
  CHECK((s0.x_after - xp).norm() < 1e-12);
  CHECK(std::abs(s0.re_radial_limit[0]) < 1e-8);
  CHECK(s0.re_segment_distance < 1e-8);
  CHECK(s0.im_monotone);
  CHECK(s0.im_crossed_threshold);

  const SingularAngleReport& s1 = rep.singular[1];
  CHECK(s1.im_crossed_threshold);
  // Opposite-sign divergence at the two angles.
  CHECK(s0.im_sign * s1.im_sign == doctest::Approx(-1.0));
}

TEST_CASE("radial boundary report for the half-circle case") {
  const BaseDomain ball = BaseDomain::ball(2);
  const GeodesicParams p = params2(Complex(0.5, 0.0), Complex(0.0, 0.5), -1.0, 0.0);
  const GeodesicEvaluator f(ball, p);
  LimitOptions opts;
  opts.divergence_threshold = 10.0;
  const BoundaryLimitReport rep = boundary_limits(ball, f, opts);
  REQUIRE(rep.singular.size() == 1);
  const SingularAngleReport& s = rep.singular[0];

  // F~(t) = (cos t - 1, -sin t): the one-sided directions at 0 are -+ e2.
  CHECK((s.x_after - (-Vec::Unit(2, 1))).norm() < 1e-5);
  CHECK((s.x_before - Vec::Unit(2, 1)).norm() < 1e-5);
  CHECK(s.re_segment_distance < 1e-6);
  CHECK(s.im_monotone);
  CHECK(s.im_crossed_threshold);
}
