#pragma once

#include "bubblekit/blowup_predictor.hpp"

namespace bubblekit {

// The three scenarios exercised by the verification suite, built in code so
// no file lookup is needed. The JSON files under scenarios/ mirror them.

// K = 1 + x6 on S^5_+: one interior concentration point at the pole.
BlowupScenario shipped_interior_scenario();

// K = 3 + x6 + x1/2: one simple boundary concentration point at e1.
BlowupScenario shipped_boundary_scenario();

// K = 3 + x6 + x1/2 + x2^2/2: an m = 3 cluster at e1, collinear limit
// offsets along the positive-curvature direction of D^2K1(e1).
BlowupScenario shipped_cluster_scenario();

// secondary example with two interior concentration points
BlowupScenario shipped_two_interior_scenario();

}  // namespace bubblekit
