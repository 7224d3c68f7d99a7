#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bubblekit/common.hpp"

namespace bubblekit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A point of the closed upper half-sphere S^n_+ = { |x| = 1, x_{n+1} >= 0 },
/// stored as an ambient unit vector of R^{n+1}. Boundary membership is
/// decided once at construction (|last coordinate| <= kBoundarySnap, in which
/// case the coordinate is snapped to exactly zero) and then frozen.
class SpherePoint {
 public:
  static constexpr double kBoundarySnap = 1e-9;

  explicit SpherePoint(Vec coords);

  const Vec& coords() const { return coords_; }
  int ambient_dim() const { return int(coords_.size()); }
  int sphere_dim() const { return ambient_dim() - 1; }  // the n of S^n_+
  bool on_boundary() const { return on_boundary_; }
  double height() const { return coords_[coords_.size() - 1]; }

  // geodesic distance to the boundary equator, arcsin of the height
  double boundary_distance() const;

 private:
  Vec coords_;
  bool on_boundary_;
};

struct TangentVector {
  SpherePoint base;
  Vec vec;  // ambient representation, orthogonal to base

  double norm() const { return vec.norm(); }
};

// raw helper: x - <x,z>z on plain vectors
Vec project_orthogonal(const Vec& x, const Vec& z);

// arccos(<a,b>) clamped to [0, pi]
double geodesic_distance(const SpherePoint& a, const SpherePoint& b);

// x - <x,z>z attached at z
TangentVector tangent_project(const SpherePoint& x, const SpherePoint& z);

// cos(|v|) z + sin(|v|) v/|v|; requires v tangent at z and |v| < pi
SpherePoint exp_map(const SpherePoint& z, const Vec& v);

// Normalized Euclidean mean b/|b| of the coordinates. Fails when |b| < 1e-8
// (antipodally balanced cluster). The output satisfies
// sum_i (a_i - <a_i, abar> abar) = 0 up to rounding.
SpherePoint cluster_barycenter(const std::vector<SpherePoint>& points);

// |sum_i (a_i - <a_i, bary> bary)|, the defining identity residual
double barycenter_identity_residual(const std::vector<SpherePoint>& points,
                                    const SpherePoint& bary);

// Deterministic orthonormal frames, returned as (n+1) x k column matrices.
// Columns are obtained by Gram-Schmidt on the ambient coordinate axes in
// their natural order (the axis most parallel to the base point is dropped),
// so the frame is a pure function of the base point.
Mat sphere_tangent_frame(const SpherePoint& x);            // k = n
Mat boundary_tangent_frame(const SpherePoint& z);          // k = n-1, last row zero

}  // namespace bubblekit
