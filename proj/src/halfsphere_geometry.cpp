#include "bubblekit/halfsphere_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace bubblekit {

SpherePoint::SpherePoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DomainError("SpherePoint: need ambient dimension >= 2");
  const double nrm = coords_.norm();
  if (std::abs(nrm - 1.0) > 1e-8)
    throw DomainError("SpherePoint: coordinates are not a unit vector (|x| = " +
                      std::to_string(nrm) + ")");
  coords_ /= nrm;
  double& last = coords_[coords_.size() - 1];
  if (last < -kBoundarySnap)
    throw DomainError("SpherePoint: below the boundary equator (last coordinate " +
                      std::to_string(last) + ")");
  on_boundary_ = std::abs(last) <= kBoundarySnap;
  if (on_boundary_) {
    last = 0.0;
    coords_ /= coords_.norm();
  }
}

double SpherePoint::boundary_distance() const {
  return std::asin(std::clamp(height(), -1.0, 1.0));
}

Vec project_orthogonal(const Vec& x, const Vec& z) { return x - x.dot(z) * z; }

double geodesic_distance(const SpherePoint& a, const SpherePoint& b) {
  const double c = std::clamp(a.coords().dot(b.coords()), -1.0, 1.0);
  return std::acos(c);
}

TangentVector tangent_project(const SpherePoint& x, const SpherePoint& z) {
  return TangentVector{z, project_orthogonal(x.coords(), z.coords())};
}

SpherePoint exp_map(const SpherePoint& z, const Vec& v) {
  if (v.size() != z.coords().size())
    throw DomainError("exp_map: tangent vector has wrong ambient dimension");
  if (std::abs(v.dot(z.coords())) > 1e-10 * std::max(1.0, v.norm()))
    throw DomainError("exp_map: vector is not tangent at the base point");
  const double r = v.norm();
  if (r >= M_PI) throw DomainError("exp_map: |v| >= pi is outside the normal chart");
  if (r == 0.0) return z;
  Vec out = std::cos(r) * z.coords() + std::sin(r) * (v / r);
  return SpherePoint(out);
}

SpherePoint cluster_barycenter(const std::vector<SpherePoint>& points) {
  if (points.empty()) throw DomainError("cluster_barycenter: empty cluster");
  Vec b = Vec::Zero(points.front().coords().size());
  for (const auto& p : points) b += p.coords();
  b /= double(points.size());
  if (b.norm() < 1e-8)
    throw DomainError("cluster_barycenter: antipodally balanced cluster, |mean| < 1e-8");
  return SpherePoint(b / b.norm());
}

double barycenter_identity_residual(const std::vector<SpherePoint>& points,
                                    const SpherePoint& bary) {
  Vec r = Vec::Zero(bary.coords().size());
  for (const auto& p : points) r += project_orthogonal(p.coords(), bary.coords());
  return r.norm();
}

namespace {

Mat gram_schmidt_frame(const Vec& base, int ambient, int want, bool boundary_tangent) {
  Mat frame(ambient, want);
  int got = 0;
  const int axes = boundary_tangent ? ambient - 1 : ambient;
  for (int k = 0; k < axes && got < want; ++k) {
    Vec v = Vec::Zero(ambient);
    v[k] = 1.0;
    v -= v.dot(base) * base;
    for (int j = 0; j < got; ++j) v -= v.dot(frame.col(j)) * frame.col(j);
    const double nrm = v.norm();
    if (nrm < 1e-7) continue;  // axis (nearly) parallel to the base point
    frame.col(got++) = v / nrm;
  }
  if (got != want) throw NumericError("tangent frame construction failed");
  return frame;
}

}  // namespace

Mat sphere_tangent_frame(const SpherePoint& x) {
  const int ambient = x.ambient_dim();
  return gram_schmidt_frame(x.coords(), ambient, ambient - 1, false);
}

Mat boundary_tangent_frame(const SpherePoint& z) {
  if (!z.on_boundary())
    throw DomainError("boundary_tangent_frame: point is not on the boundary");
  const int ambient = z.ambient_dim();
  return gram_schmidt_frame(z.coords(), ambient, ambient - 2, true);
}

}  // namespace bubblekit
