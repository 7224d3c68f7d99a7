#pragma once

#include <vector>

#include "bubblekit/halfsphere_geometry.hpp"

namespace bubblekit {

/// One concentration triple (a, lambda, alpha).
struct BubbleParam {
  SpherePoint a;
  double lambda = 0.0;
  double alpha = 1.0;
  bool boundary_flag = false;
};

BubbleParam make_bubble(SpherePoint a, double lambda, double alpha = 1.0);

// c0(n) = (n(n-2))^{(n-2)/4}, the bubble normalization
double bubble_c0(int n);

// c0 lambda^{(n-2)/2} / (lambda^2 + 1 + (1-lambda^2) cos d(a,x))^{(n-2)/2}
double bubble_value(int n, const SpherePoint& a, double lambda, const SpherePoint& x);

// (li/lj + lj/li + 1/2 li lj (1 - cos d(ai,aj)))^{(2-n)/2}
double interaction_eps(int n, const BubbleParam& pi, const BubbleParam& pj);

// lambda_i d eps_ij / d lambda_i, i.e. the derivative in log lambda_i
double d_eps_d_loglambda(int n, const BubbleParam& pi, const BubbleParam& pj);

// ambient derivative of eps_ij in a_i, projected tangentially at a_i
TangentVector d_eps_d_a(int n, const BubbleParam& pi, const BubbleParam& pj);

// flat-limit reference (li lj d^2 / 4)^{(2-n)/2}; interaction_eps / reference
// tends to 1 as (min lambda) * d grows with comparable rates
double far_field_reference(int n, const BubbleParam& pi, const BubbleParam& pj);

// e_ij = deps/da_i . (h - <a_i,h>a_i) + deps/da_j . (h - <a_j,h>a_j)
double barycentric_pairing(int n, const BubbleParam& pi, const BubbleParam& pj,
                           const SpherePoint& h);

// Regular part of the Neumann Green function of the conformal Laplacian on
// the half-sphere. The half-sphere is conformally the flat half-space where
// the Neumann Green function is the free kernel plus its image; pulled back,
// the image term is the kernel at the ambient mirror point:
//   H(a,b) = 2^{(n-2)/2} |b - Ra|^{2-n},  R = reflection across the equator.
// Symmetric, positive, and H(a,a) ~ (2 d_a)^{2-n} 2^{(n-2)/2} at the boundary.
double green_regular_part(int n, const SpherePoint& a, const SpherePoint& b);

struct BubbleEnvelope {
  double lower = 0.0;   // delta_{a,lambda}(x)
  double upper = 0.0;   // 2 delta_{a,lambda}(x); equals lower for boundary a
  double approx = 0.0;  // delta + c0 H(a,x)/lambda^{(n-2)/2}
};

// Envelope of the Neumann-projected bubble and its image-term approximation.
// For boundary a the projection is the bubble itself and the envelope
// collapses. The approximation sits inside [lower, upper] for interior x
// once lambda * d_a is large (threshold ~ 20).
BubbleEnvelope projected_bubble_envelope(int n, const SpherePoint& a, double lambda,
                                         const SpherePoint& x);

// Defect of the first-order expansion of delta^{-eps}:
// | delta^{-eps} - c0^{-eps} lambda^{-eps(n-2)/2}
//     (1 + (n-2)/2 eps ln(2 + (lambda^2-1)(1-cos d))) |
// which is O(eps^2 ln(...)). Requires eps * ln(lambda) < 0.1.
double subcritical_expansion_check(int n, const SpherePoint& a, double lambda,
                                   double eps, const SpherePoint& x);

struct InteractionMatrix {
  Mat eps;                           // symmetric, zero diagonal
  Mat dlam;                          // dlam(i,j) = lambda_i deps_ij/dlambda_i
  std::vector<std::vector<Vec>> da;  // da[i][j] = (1/lambda_i) deps_ij/da_i
};

InteractionMatrix assemble_interactions(int n, const std::vector<BubbleParam>& bubbles);

// Regime guard for a bubble family: every rate above 1/tau and every mutual
// interaction below tau (the neighborhood-at-infinity smallness conditions).
struct RegimeReport {
  bool ok = false;
  double min_lambda = 0.0;
  double max_eps = 0.0;
};

RegimeReport check_bubble_regime(int n, const std::vector<BubbleParam>& bubbles,
                                 double tau = 0.1);

}  // namespace bubblekit
