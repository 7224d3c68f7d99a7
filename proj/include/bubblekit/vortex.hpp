#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "bubblekit/common.hpp"

namespace bubblekit {

/// Point-vortex Hamiltonian on m distinct tangent vectors at a boundary
/// point, in intrinsic coordinates of dimension n-1:
///   F(xi) = 1/2 sum_i Q xi_i . xi_i + sum_{i<j} |xi_i - xi_j|^{2-n}.
struct VortexConfiguration {
  int n = 0;                        // sphere dimension; kernel exponent n-2
  Eigen::MatrixXd Q;                // symmetric (n-1) x (n-1)
  std::vector<Eigen::VectorXd> xi;  // m distinct vectors of length n-1
};

void check_configuration(const VortexConfiguration& c);

double energy(const VortexConfiguration& c);
std::vector<Eigen::VectorXd> gradient(const VortexConfiguration& c);
Eigen::MatrixXd hessian(const VortexConfiguration& c);  // m(n-1) square

double quadratic_part(const VortexConfiguration& c);    // sum Q xi . xi
double interaction_part(const VortexConfiguration& c);  // sum_{i<j} |xi_i-xi_j|^{2-n}

// quadratic_part - (n-2) * interaction_part; vanishes at critical points
// (dilation derivative of F at t = 1)
double virial_residual(const VortexConfiguration& c);

struct VortexCriticalPoint {
  VortexConfiguration config;
  double energy = 0.0;
  double virial = 0.0;
  int morse_index = 0;
  Eigen::VectorXd hessian_eigenvalues;
};

struct VortexDiagnostics {
  int converged = 0;
  int diverged = 0;
  int virial_rejected = 0;
  int separation_rejected = 0;
  int duplicates = 0;
  // true when the quadratic form has no positive direction, which rules out
  // critical points outright (the interaction part is strictly positive)
  bool obstructed = false;
};

struct VortexSearchResult {
  std::vector<VortexCriticalPoint> points;
  VortexDiagnostics diag;
};

/// Damped Newton from `starts` seeded quasi-random configurations drawn in
/// the annulus 0.3 rho <= |xi| <= 3 rho, rho = (m(n-2)/|Q|)^{1/n}. Accepts
/// |grad F| < 1e-10 with min separation > 1e-6 and virial residual <= 1e-6;
/// deduplicates modulo permutation, and modulo orthogonal maps R when
/// |QR - RQ| < 1e-10. Deterministic given (seed, starts).
VortexSearchResult find_critical_points(const Eigen::MatrixXd& Q, int m, int n,
                                        int starts = 200, std::uint64_t seed = 0);

struct NewtonTrace {
  std::vector<std::vector<Eigen::VectorXd>> iterates;
};

// Single damped Newton run; returns true on convergence. `trace`, when
// given, records every iterate (used to measure the convergence order).
bool newton_run(const Eigen::MatrixXd& Q, int n, std::vector<Eigen::VectorXd>& xi,
                NewtonTrace* trace = nullptr);

}  // namespace bubblekit
