// Two-point solver: slice and one-dimensional model oracles, metric
// properties, boundary-to-boundary construction, verification reports and
// uniqueness probes.

#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "tubegeo/model_spaces.hpp"
#include "tubegeo/solver.hpp"

using namespace tubegeo;

namespace {

CVec cvec2(Complex a, Complex b) {
  CVec v(2);
  v << a, b;
  return v;
}

double im_span(const GeodesicTrace& tr) {
  double worst = 0.0;
  for (double r = -0.9; r <= 0.9; r += 0.15) {
    const CVec f = (*tr.evaluator)(Complex(r, 0.0));
    worst = std::max(worst, (f.imag() - tr.w.imag()).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

}  // namespace

TEST_CASE("axis pairs in the ball tube match the strip slice") {
  const BaseDomain dom = BaseDomain::ball(2);
  for (double t : {0.2, 0.5, 0.8}) {
    const CVec w = CVec::Zero(2);
    const CVec z = cvec2(Complex(t, 0.0), 0.0);
    const double k = kobayashi_distance(dom, w, z);
    CHECK(std::abs(k - std::atanh(std::tan(kPi * t / 4.0))) < 1e-7);
  }
  CHECK(std::abs(kobayashi_distance(dom, CVec::Zero(2), cvec2(0.5, 0.0)) -
                 0.44068679350977147) < 1e-7);

  const GeodesicTrace tr = connect(dom, CVec::Zero(2), cvec2(0.5, 0.0));
  CHECK(tr.real_pair);
  CHECK(tr.label() == FCaseLabel::kTwoAntipodalValues);
  CHECK((tr.evaluator->x_plus() + tr.evaluator->x_minus()).norm() < 1e-9);
  CHECK(std::abs(std::abs(tr.evaluator->x_plus()[0]) - 1.0) < 1e-9);
}

TEST_CASE("one-dimensional pairs match the interval tube model") {
  const BaseDomain dom = BaseDomain::ball(1);
  auto gen = oracles::rng(991);
  for (int k = 0; k < 8; ++k) {
    const Complex w(oracles::uniform(gen, -0.85, 0.85), oracles::uniform(gen, -1.5, 1.5));
    const Complex z(oracles::uniform(gen, -0.85, 0.85), oracles::uniform(gen, -1.5, 1.5));
    if (std::abs(w - z) < 0.1) continue;
    CVec wv(1), zv(1);
    wv << w;
    zv << z;
    const double got = kobayashi_distance(dom, wv, zv);
    const double want = interval_tube_distance(-1.0, 1.0, w, z);
    CAPTURE(w);
    CAPTURE(z);
    CHECK(std::abs(got - want) < 1e-5);
  }
}

TEST_CASE("distance is symmetric, positive, and zero at equal points") {
  const Vec axes = (Vec(2) << 1.2, 0.7).finished();
  const BaseDomain dom = BaseDomain::ellipsoid(axes);
  const CVec w = cvec2(Complex(0.3, 0.4), Complex(-0.2, 0.1));
  const CVec z = cvec2(Complex(-0.5, -0.2), Complex(0.3, 0.6));
  CHECK(kobayashi_distance(dom, w, w) == 0.0);
  const double kwz = kobayashi_distance(dom, w, z);
  const double kzw = kobayashi_distance(dom, z, w);
  CHECK(kwz > 0.1);
  CHECK(std::abs(kwz - kzw) < 1e-5);
}

TEST_CASE("imaginary translations leave the distance unchanged") {
  const BaseDomain dom = BaseDomain::ball(2);
  const CVec w = cvec2(Complex(0.1, 0.7), Complex(-0.4, -0.3));
  const CVec z = cvec2(Complex(-0.3, 0.2), Complex(0.5, 1.1));
  const CVec shift = cvec2(Complex(0.0, 2.5), Complex(0.0, -1.25));
  const double base = kobayashi_distance(dom, w, z);
  CHECK(std::abs(kobayashi_distance(dom, w + shift, z + shift) - base) < 1e-7);
}

TEST_CASE("real pairs produce real traces") {
  const Vec axes = (Vec(2) << 1.2, 0.7).finished();
  const BaseDomain dom = BaseDomain::ellipsoid(axes);
  auto gen = oracles::rng(7);
  for (int k = 0; k < 3; ++k) {
    const CVec w = oracles::random_interior(gen, dom, 0.1).cast<Complex>();
    const CVec z = oracles::random_interior(gen, dom, 0.1).cast<Complex>();
    if ((w - z).norm() < 0.1) continue;
    const GeodesicTrace tr = connect(dom, w, z);
    CHECK(tr.real_pair);
    CHECK(im_span(tr) < 1e-7);
    CHECK(std::max(tr.residual_w, tr.residual_z) < 1e-6);
  }
}

TEST_CASE("triangle inequality on random triples") {
  const BaseDomain dom = BaseDomain::ball(2);
  auto gen = oracles::rng(41);
  for (int k = 0; k < 3; ++k) {
    const CVec a = oracles::random_interior(gen, dom, 0.1).cast<Complex>() +
                   Complex(0.0, 1.0) * oracles::random_cvec(gen, 2, 0.5).real().cast<Complex>();
    const CVec b = oracles::random_interior(gen, dom, 0.1).cast<Complex>() +
                   Complex(0.0, 1.0) * oracles::random_cvec(gen, 2, 0.5).real().cast<Complex>();
    const CVec c = oracles::random_interior(gen, dom, 0.1).cast<Complex>() +
                   Complex(0.0, 1.0) * oracles::random_cvec(gen, 2, 0.5).real().cast<Complex>();
    if ((a - b).norm() < 0.1 || (b - c).norm() < 0.1 || (a - c).norm() < 0.1) continue;
    const double kab = kobayashi_distance(dom, a, b);
    const double kbc = kobayashi_distance(dom, b, c);
    const double kac = kobayashi_distance(dom, a, c);
    CHECK(kac <= kab + kbc + 1e-6);
  }
}

TEST_CASE("repeat solves are deterministic") {
  const BaseDomain dom = BaseDomain::ball(2);
  const CVec w = cvec2(Complex(0.2, 0.3), Complex(-0.1, 0.6));
  const CVec z = cvec2(Complex(-0.4, -0.1), Complex(0.2, 0.2));
  const GeodesicTrace t1 = connect(dom, w, z);
  const GeodesicTrace t2 = connect(dom, w, z);
  CHECK(t1.s == t2.s);
  CHECK((t1.params.b - t2.params.b).norm() == 0.0);
}

TEST_CASE("boundary construction meets its radial limits") {
  const BaseDomain dom = BaseDomain::ball(2);
  const Vec e1 = Vec::Unit(2, 0), e2 = Vec::Unit(2, 1);

  SUBCASE("antipodal normals give the two-value profile") {
    const GeodesicTrace tr = connect_boundary(dom, e1, -e1);
    CHECK(tr.boundary_pair);
    CHECK(tr.label() == FCaseLabel::kTwoAntipodalValues);
    CHECK((tr.params.a.real().normalized() + e1).norm() < 1e-12);
    CHECK(tr.params.a.imag().norm() < 1e-15);
    CHECK(tr.params.b.norm() < 1e-15);
    CHECK(tr.residual_w < 1e-6);
    CHECK(tr.residual_z < 1e-6);
  }

  SUBCASE("orthogonal normals give a small arc") {
    const GeodesicTrace tr = connect_boundary(dom, e1, e2);
    CHECK(tr.label() == FCaseLabel::kSmallArc);
    CHECK(tr.residual_w < 1e-6);
    CHECK(tr.residual_z < 1e-6);

    const GeodesicTrace sw = connect_boundary(dom, e2, e1);
    CHECK((sw.params.a + tr.params.a).norm() < 1e-12);
    CHECK((sw.params.b - tr.params.b).norm() < 1e-12);
  }

  SUBCASE("rejections") {
    CHECK_THROWS_AS(connect_boundary(dom, e1, e1), ArgumentError);
    CHECK_THROWS_AS(connect_boundary(dom, 0.5 * e1, -e1), DomainError);
    const BaseDomain box = BaseDomain::interval_product(-e1.array() - 1.0, e1.array() + 1.0);
    CHECK_THROWS_AS(connect_boundary(box, e1, -e1), DomainError);
  }
}

TEST_CASE("verification reports and tamper detection") {
  const Vec axes = (Vec(2) << 1.2, 0.7).finished();
  const BaseDomain dom = BaseDomain::ellipsoid(axes);
  const CVec w = cvec2(Complex(0.4, 0.1), Complex(0.2, -0.3));
  const CVec z = cvec2(Complex(-0.6, 0.5), Complex(-0.1, 0.4));
  const GeodesicTrace tr = connect(dom, w, z);

  const VerifyReport ok = verify_geodesic(dom, tr);
  CHECK(ok.pass);
  CHECK(ok.max_boundary_defect <= 1e-8);
  CHECK(ok.max_alignment_error <= 1e-6);
  CHECK(ok.interior_ok);
  CHECK(ok.max_interior_rho < 0.0);

  GeodesicTrace bad_endpoint = tr;
  bad_endpoint.residual_z = 1.0;
  CHECK_FALSE(verify_geodesic(dom, bad_endpoint).pass);

  const VerifyReport cross = verify_geodesic(BaseDomain::ball(2), tr);
  CHECK_FALSE(cross.pass);
  CHECK(cross.max_boundary_defect > 1e-3);
}

TEST_CASE("restarts recover a single geodesic") {
  const BaseDomain dom = BaseDomain::ball(2);

  SUBCASE("complex pair") {
    const CVec w = cvec2(Complex(0.2, 0.4), Complex(-0.3, 0.1));
    const CVec z = cvec2(Complex(-0.1, -0.2), Complex(0.4, 0.5));
    const UniquenessReport rep = uniqueness_probe(dom, w, z, 5);
    CHECK(rep.converged >= 3);
    CHECK(rep.max_profile_deviation <= 1e-5);
  }

  SUBCASE("real pair symmetry") {
    const CVec w = cvec2(0.3, -0.2);
    const CVec z = cvec2(-0.4, 0.25);
    const UniquenessReport rep = uniqueness_probe(dom, w, z, 4);
    CHECK(rep.converged >= 3);
    CHECK(rep.real_pair);
    CHECK(rep.max_profile_deviation <= 1e-5);
    CHECK(rep.max_im_on_reals <= 1e-7);
    CHECK(rep.max_symmetrization_defect <= 1e-8);
  }

  SUBCASE("coincident points are rejected") {
    const CVec w = cvec2(0.1, 0.1);
    CHECK_THROWS_AS(uniqueness_probe(dom, w, w, 3), ArgumentError);
  }
}

TEST_CASE("connect rejects malformed input") {
  const BaseDomain dom = BaseDomain::ball(2);
  const CVec w = cvec2(0.1, 0.2);
  CHECK_THROWS_AS(connect(dom, w, w), ArgumentError);
  CHECK_THROWS_AS(connect(dom, w, cvec2(Complex(2.0, 0.0), 0.0)), ArgumentError);
  CHECK_THROWS_AS(connect(dom, CVec::Zero(3), w), ArgumentError);
  const BaseDomain box = BaseDomain::interval_product(Vec::Constant(2, -1.0), Vec::Constant(2, 1.0));
  CHECK_THROWS_AS(connect(box, w, cvec2(0.3, 0.4)), DomainError);
}
