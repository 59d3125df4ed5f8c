// Affine lower bound and polynomial-disc upper bound: exactness cases,
// sandwich against the solver, and degree monotonicity.

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tubegeo/bounds.hpp"
#include "tubegeo/model_spaces.hpp"
#include "tubegeo/solver.hpp"

using namespace tubegeo;

namespace {

CVec cvec2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("affine bound is exact on ball axis pairs") {
  const BaseDomain dom = BaseDomain::ball(2);
  for (double t : {0.3, 0.6, 0.9}) {
    const double lb = affine_lower_bound(dom, CVec::Zero(2), cvec2(t, 0.0));
    CHECK(std::abs(lb - std::atanh(std::tan(kPi * t / 4.0))) < 1e-12);
  }
  CHECK(affine_lower_bound(dom, cvec2(0.1, 0.2), cvec2(0.1, 0.2)) == 0.0);
}

TEST_CASE("affine bound reproduces the product distance on interval products") {
  const Vec lo = (Vec(2) << -1.0, -2.0).finished();
  const Vec hi = (Vec(2) << 1.0, 0.5).finished();
  const BaseDomain dom = BaseDomain::interval_product(lo, hi);
  auto gen = oracles::rng(314);
  for (int k = 0; k < 10; ++k) {
    CVec w(2), z(2);
    for (Index i = 0; i < 2; ++i) {
      w[i] = Complex(oracles::uniform(gen, lo[i] + 0.05, hi[i] - 0.05),
                     oracles::uniform(gen, -2.0, 2.0));
      z[i] = Complex(oracles::uniform(gen, lo[i] + 0.05, hi[i] - 0.05),
                     oracles::uniform(gen, -2.0, 2.0));
    }
    const double lb = affine_lower_bound(dom, w, z);
    const double exact = product_tube_distance(lo, hi, w, z);
    CHECK(lb <= exact + 1e-12);
    CHECK(lb >= exact - 1e-9);
  }
}

TEST_CASE("affine bound handles half-plane projections of the paraboloid base") {
  const BaseDomain dom = BaseDomain::paraboloid();
  const CVec w = cvec2(1.0, 0.0);
  const CVec z = cvec2(4.0, 0.0);
  // Direction -e1 projects onto {Re < 0}; the half-plane distance of the
  // images is a positive lower bound.
  const double lb = affine_lower_bound(dom, w, z);
  CHECK(lb >= halfplane_distance(Complex(1.0, 0.0), Complex(4.0, 0.0)) - 1e-12);
  CHECK(lb > 0.1);
}

TEST_CASE("degree-1 disc bound on a ball axis pair") {
  const BaseDomain dom = BaseDomain::ball(2);
  const CVec w = CVec::Zero(2);
  const CVec z = cvec2(0.5, 0.0);
  const double exact = std::atanh(std::tan(kPi * 0.125));

  const LempertBound b1 = lempert_upper_bound(dom, w, z, 1);
  CHECK(b1.certified);
  CHECK_FALSE(b1.affine_fallback);
  CHECK(b1.value >= exact - 1e-9);

  const LempertBound b4 = lempert_upper_bound(dom, w, z, 4);
  CHECK(b4.certified);
  CHECK(b4.value <= b1.value + 1e-12);
  CHECK(b4.value >= exact - 1e-9);
}

TEST_CASE("disc bound approaches the exact product distance") {
  const Vec lo = Vec::Constant(2, -1.0);
  const Vec hi = Vec::Constant(2, 1.0);
  const BaseDomain dom = BaseDomain::interval_product(lo, hi);
  const CVec w = cvec2(Complex(-0.2, 0.0), Complex(0.1, 0.0));
  const CVec z = cvec2(Complex(0.3, 0.0), Complex(-0.1, 0.0));
  const double exact = product_tube_distance(lo, hi, w, z);

  const LempertBound b2 = lempert_upper_bound(dom, w, z, 2);
  const LempertBound b8 = lempert_upper_bound(dom, w, z, 8);
  CHECK(b2.certified);
  CHECK(b8.certified);
  CHECK(b8.value >= exact - 1e-9);
  CHECK(b8.value <= b2.value + 1e-12);
  CHECK(b8.value <= exact + 2e-2);
}

TEST_CASE("sandwich around the solver distance") {
  const Vec axes = (Vec(2) << 1.2, 0.7).finished();
  const BaseDomain dom = BaseDomain::ellipsoid(axes);
  auto gen = oracles::rng(555);
  for (int k = 0; k < 4; ++k) {
    const CVec w = oracles::random_interior(gen, dom, 0.15).cast<Complex>() +
                   Complex(0.0, 1.0) * oracles::random_vec(gen, 2, -0.4, 0.4).cast<Complex>();
    const CVec z = oracles::random_interior(gen, dom, 0.15).cast<Complex>() +
                   Complex(0.0, 1.0) * oracles::random_vec(gen, 2, -0.4, 0.4).cast<Complex>();
    if ((w - z).norm() < 0.1) continue;
    const double k_dist = kobayashi_distance(dom, w, z);
    const double lb = affine_lower_bound(dom, w, z);
    LempertOptions quick;
    quick.stop_after_first = true;
    quick.s_tol = 1e-3;
    quick.inner_iterations = 8000;
    quick.stall_window = 1500;
    const LempertBound ub = lempert_upper_bound(dom, w, z, 6, quick);
    CAPTURE(k_dist);
    CAPTURE(lb);
    CAPTURE(ub.value);
    CHECK(lb <= k_dist + 1e-9);
    CHECK(ub.certified);
    CHECK(ub.value >= k_dist - 1e-9);
  }
}

TEST_CASE("bound rejections") {
  const BaseDomain dom = BaseDomain::ball(2);
  CHECK_THROWS_AS(affine_lower_bound(dom, CVec::Zero(3), CVec::Zero(2)), ArgumentError);
  CHECK_THROWS_AS(lempert_upper_bound(dom, cvec2(2.0, 0.0), CVec::Zero(2)), ArgumentError);
  CHECK_THROWS_AS(lempert_upper_bound(dom, CVec::Zero(2), cvec2(0.5, 0.0), 0), ArgumentError);
}
