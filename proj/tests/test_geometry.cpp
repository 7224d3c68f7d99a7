#include <doctest.h>

#include <cmath>

#include "bubblekit/common.hpp"
#include "bubblekit/halfsphere_geometry.hpp"

using namespace bubblekit;

namespace {

SpherePoint unit_axis(int dim, int k) {
  Vec v = Vec::Zero(dim);
  v[k] = 1.0;
  return SpherePoint(v);
}

SpherePoint random_upper_point(Rng& rng, int ambient) {
  Vec v(ambient);
  for (int k = 0; k < ambient; ++k) v[k] = rng.gaussian();
  v[ambient - 1] = std::abs(v[ambient - 1]) + 0.05;
  v /= v.norm();
  return SpherePoint(v);
}

}  // namespace

TEST_CASE("geodesic distance basics") {
  const int ambient = 6;
  const SpherePoint north = unit_axis(ambient, ambient - 1);
  const SpherePoint e0 = unit_axis(ambient, 0);
  Vec m = Vec::Zero(ambient);
  m[0] = -1.0;
  const SpherePoint minus_e0 = SpherePoint(m);

  CHECK(geodesic_distance(north, north) == 0.0);
  CHECK(geodesic_distance(north, e0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(geodesic_distance(e0, minus_e0) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(geodesic_distance(e0, north) == geodesic_distance(north, e0));
}

TEST_CASE("geodesic distance triangle inequality and chord identities") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const SpherePoint a = random_upper_point(rng, 6);
    const SpherePoint b = random_upper_point(rng, 6);
    const SpherePoint c = random_upper_point(rng, 6);
    CHECK(geodesic_distance(a, b) <=
          geodesic_distance(a, c) + geodesic_distance(c, b) + 1e-10);
    // 2(1-cos d) equals the squared ambient chord
    const double d = geodesic_distance(a, b);
    const double chord2 = (a.coords() - b.coords()).squaredNorm();
    CHECK(std::abs(2.0 * (1.0 - std::cos(d)) - chord2) <= 1e-12);
  }
}

TEST_CASE("geodesic distance matches the chord for small separations") {
  const SpherePoint z = unit_axis(6, 0);
  const Mat frame = sphere_tangent_frame(z);
  double prev_ratio = 0.0;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    const SpherePoint x = exp_map(z, h * frame.col(0));
    const double d = geodesic_distance(z, x);
    const double chord = (x.coords() - z.coords()).norm();
    const double ratio = (d / chord - 1.0) / (chord * chord);
    CHECK(std::abs(ratio) < 0.1);  // d = |a-b| (1 + |a-b|^2/24 + ...)
    if (prev_ratio != 0.0) CHECK(std::abs(ratio - prev_ratio) < 0.01);
    prev_ratio = ratio;
  }
}

TEST_CASE("tangent projection") {
  Rng rng(7);
  const SpherePoint z = random_upper_point(rng, 6);

  CHECK(tangent_project(z, z).vec.norm() == 0.0);

  const Mat frame = sphere_tangent_frame(z);
  const SpherePoint x_orth(Vec(frame.col(2)));
  CHECK((tangent_project(x_orth, z).vec - x_orth.coords()).norm() < 1e-14);

  // x = cos t z + sin t e projects to sin t e
  const double t = 0.3;
  const Vec e = frame.col(1);
  const SpherePoint x(std::cos(t) * z.coords() + std::sin(t) * e);
  CHECK((tangent_project(x, z).vec - std::sin(t) * e).norm() < 1e-14);
  CHECK(std::abs(tangent_project(x, z).vec.dot(z.coords())) < 1e-10);
}

TEST_CASE("exponential map") {
  Rng rng(11);
  const SpherePoint z = random_upper_point(rng, 6);
  const Mat frame = sphere_tangent_frame(z);

  CHECK((exp_map(z, Vec::Zero(6)).coords() - z.coords()).norm() == 0.0);

  const Vec quarter = (M_PI / 2) * frame.col(0);
  CHECK(std::abs(exp_map(z, quarter).coords().dot(z.coords())) < 1e-15);

  // round trip at |v| = 0.1: the projection back is sin(|v|) v/|v|
  const Vec v = 0.1 * (frame.col(0) + 0.5 * frame.col(3)).normalized();
  const SpherePoint y = exp_map(z, v);
  CHECK(geodesic_distance(z, y) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK((tangent_project(y, z).vec - std::sin(0.1) * v / 0.1).norm() < 1e-14);

  CHECK_THROWS_AS(exp_map(z, M_PI * frame.col(0)), DomainError);
  CHECK_THROWS_AS(exp_map(z, Vec(z.coords())), DomainError);  // not tangent
}

TEST_CASE("cluster barycenter") {
  const SpherePoint z = unit_axis(6, 0);

  CHECK((cluster_barycenter({z}).coords() - z.coords()).norm() == 0.0);

  // two symmetric points about a boundary point
  const Mat frame = boundary_tangent_frame(z);
  const Vec dir = frame.col(0);
  const SpherePoint a = exp_map(z, 0.2 * dir);
  const SpherePoint b = exp_map(z, -0.2 * dir);
  CHECK((cluster_barycenter({a, b}).coords() - z.coords()).norm() < 1e-14);

  // three points on a small circle: the defining identity holds
  std::vector<SpherePoint> circle;
  for (int k = 0; k < 3; ++k) {
    const double phi = 2.0 * M_PI * k / 3.0 + 0.31;
    circle.push_back(
        exp_map(z, 0.05 * (std::cos(phi) * frame.col(0) + std::sin(phi) * frame.col(1))));
  }
  const SpherePoint bary = cluster_barycenter(circle);
  CHECK(barycenter_identity_residual(circle, bary) < 1e-10);

  // permutation invariance
  const SpherePoint bary2 = cluster_barycenter({circle[2], circle[0], circle[1]});
  CHECK((bary.coords() - bary2.coords()).norm() < 1e-14);

  // antipodally balanced clusters are rejected
  Vec m = Vec::Zero(6);
  m[0] = -1.0;
  CHECK_THROWS_AS(cluster_barycenter({z, SpherePoint(m)}), DomainError);
}

TEST_CASE("sphere point construction rules") {
  Vec v = Vec::Zero(6);
  v[5] = -1.0;
  CHECK_THROWS_AS(SpherePoint{v}, DomainError);  // below the equator

  Vec w = Vec::Zero(6);
  w[0] = 2.0;
  CHECK_THROWS_AS(SpherePoint{w}, DomainError);  // not unit

  Vec b = Vec::Zero(6);
  b[0] = 1.0;
  b[5] = 1e-10;  // inside the snap band
  const SpherePoint p{b};
  CHECK(p.on_boundary());
  CHECK(p.height() == 0.0);

  Vec c = Vec::Zero(6);
  c[0] = std::sqrt(1.0 - 1e-8);
  c[5] = 1e-4;
  CHECK(!SpherePoint{c}.on_boundary());
}

TEST_CASE("boundary tangent frame spans the boundary tangent space") {
  const SpherePoint z = unit_axis(6, 0);
  const Mat fr = boundary_tangent_frame(z);
  CHECK(fr.cols() == 4);
  CHECK((fr.transpose() * fr - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(fr.row(5).cwiseAbs().maxCoeff() == 0.0);
  CHECK((fr.transpose() * z.coords()).cwiseAbs().maxCoeff() < 1e-14);
}
