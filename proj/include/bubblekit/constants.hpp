#pragma once

#include "bubblekit/quadrature.hpp"

namespace bubblekit {

/// Dimensional constants of the bubble calculus for sphere dimension n. All
/// integrals are reduced analytically to 1-D radial integrals against the
/// sphere (or half-sphere) surface measure, mapped to [0, pi/2) by r = tan t,
/// and evaluated by adaptive quadrature.
struct ConstantsTable {
  int n = 0;
  double c0 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
  double kappa1 = 0, kappa2 = 0, kappa3 = 0;
  // absolute error estimates propagated from the quadrature, same order
  double err_c2 = 0, err_c3 = 0, err_c4 = 0, err_c5 = 0, err_c6 = 0;
  bool converged = true;
};

// Quadrature to absolute tolerance `tol` on each radial integral. Results
// are memoized per (n, tol, initial_panels); the cache is safe for
// concurrent readers. `initial_panels` doubling is the stability probe.
ConstantsTable compute_constants(int n, double tol = 1e-10, int initial_panels = 8);

struct KappaTable {
  double kappa1 = 0, kappa2 = 0, kappa3 = 0;
};

// kappa1 = c4/(2 c5), kappa2 = c3/c5,
// kappa3 = 2^{(n-3)/n} (c2/c6)^{1/n} (c5/c3)^{(n-2)/n}.
// Throws NumericError if any kappa fails to be strictly positive.
KappaTable kappa_table(const ConstantsTable& t);

}  // namespace bubblekit
