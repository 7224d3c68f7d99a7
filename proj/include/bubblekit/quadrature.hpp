#pragma once

#include <functional>

namespace bubblekit {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  int panels = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int initial_panels = 8;   // uniform pre-split; doubling it is the
                            // node-doubling stability probe
  int max_panels = 4000;
};

// Adaptive Gauss-Kronrod (G7/K15) on [a,b]. The per-panel error estimate is
// the conservative |K15 - G7| difference; panels are bisected worst-first
// until the summed estimate meets abs_tol or the panel budget runs out. A
// non-converged result still carries the achieved estimate.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opt = {});

}  // namespace bubblekit
