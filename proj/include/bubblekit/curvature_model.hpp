#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bubblekit/halfsphere_geometry.hpp"

namespace bubblekit {

struct FieldTerm {
  double coeff = 0.0;
  std::vector<int> powers;  // length n+1, exponents of the ambient monomial
};

/// Prescribed curvature function K, represented as an ambient polynomial
/// K(x) = sum coeff * prod x_k^{m_k} restricted to the sphere. The polynomial
/// representation gives exact derivatives; intrinsic (tangential) operators
/// are obtained from the ambient ones by projection.
///
/// Normal-derivative convention: the normal at a boundary point is the INWARD
/// one, i.e. the direction of increasing last coordinate, so that boundary
/// concentration requires normal_derivative > 0.
class CurvatureField {
 public:
  CurvatureField(int n, std::vector<FieldTerm> terms, double positivity_floor);

  int n() const { return n_; }  // sphere dimension; ambient is n+1
  double positivity_floor() const { return positivity_floor_; }
  const std::vector<FieldTerm>& terms() const { return terms_; }

  // ambient polynomial calculus
  double eval_ambient(const Vec& x) const;
  Vec grad_ambient(const Vec& x) const;
  Mat hess_ambient(const Vec& x) const;

  // intrinsic operators on S^n
  double eval(const SpherePoint& x) const { return eval_ambient(x.coords()); }
  TangentVector grad(const SpherePoint& x) const;
  // tangential Hessian as an ambient (n+1)^2 bilinear form: for tangent v,w
  // at x it returns Hess_amb(v,w) - <grad_amb, x> <v,w>
  Mat hess(const SpherePoint& x) const;
  double laplace_beltrami(const SpherePoint& x) const;

  // boundary restriction K1 and its intrinsic calculus
  double normal_derivative(const SpherePoint& z) const;
  TangentVector grad_K1(const SpherePoint& z) const;
  Mat hess_K1(const SpherePoint& z) const;  // ambient form on T_z(boundary)
  // matrix of a tangential Hessian in a given orthonormal frame
  Mat hess_in_frame(const Mat& ambient_form, const Mat& frame) const;

 private:
  int n_;
  std::vector<FieldTerm> terms_;
  double positivity_floor_;
};

// Checks K >= positivity_floor on `samples` quasi-random points of the closed
// half-sphere and runs finite-difference spot checks of the derivatives.
// Throws DomainError on violation.
void validate_field(const CurvatureField& field, int samples = 10000);

struct CriticalPointRecord {
  enum class Kind { interior, boundary };
  SpherePoint location;
  Kind kind;
  double value;               // K at the location
  double laplacian;           // Laplace-Beltrami of K (interior records)
  double normal_derivative;   // inward normal derivative (boundary records)
  Mat frame;                  // orthonormal tangent frame used below
  Mat hessian_tangential;     // intrinsic Hessian in `frame`; D^2K1 for boundary
  double grad_norm;           // intrinsic gradient norm at the location
  double min_singular_value;  // of hessian_tangential
};

struct CriticalPointSearch {
  std::vector<CriticalPointRecord> accepted;
  std::vector<SpherePoint> degenerate;  // converged but near-singular Hessian
  int diverged = 0;
  int out_of_region = 0;  // interior searches that drifted onto the boundary
};

// Newton on the intrinsic gradient from a seeded quasi-random grid of starts,
// deduplicated within geodesic distance 1e-6 and sorted by coordinates.
// Degenerate limits are reported, not silently dropped.
CriticalPointSearch find_critical_points(const CurvatureField& field,
                                         CriticalPointRecord::Kind kind,
                                         int starts = 256, std::uint64_t seed = 0);

// Refine a single start to a critical point of the given kind; throws
// NumericError when Newton does not converge.
CriticalPointRecord refine_critical_point(const CurvatureField& field,
                                          CriticalPointRecord::Kind kind,
                                          const SpherePoint& start);

// |K1(a)^{-n/2} grad K1(a)(h - <a,h>a) + K1(h)^{-n/2} grad K1(h)(a - <a,h>h)|,
// which is O(|a-h|^2) near a common boundary critical point.
double gradK1_symmetry_defect(const CurvatureField& field, const SpherePoint& a,
                              const SpherePoint& h);

// |grad K1(a)(e - <a,e>a)/K1(a) - D^2K1(z)(a - <a,z>z, e - <e,z>z)/K1(z)|,
// O(|a-z|^2) for a near a boundary critical point z.
double gradK1_transport_defect(const CurvatureField& field, const SpherePoint& a,
                               const SpherePoint& z, const SpherePoint& e);

}  // namespace bubblekit
