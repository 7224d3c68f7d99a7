#pragma once

#include <string>

#include "bubblekit/blowup_predictor.hpp"

namespace bubblekit {

// Curvature configuration document:
//   { "n": int, "terms": [{"coeff": real, "powers": [int; n+1]}],
//     "positivity_floor": real }
// Field names are exact; unknown keys are rejected. The ingested field is
// validated (positivity sample + derivative spot checks).
CurvatureField field_from_json(const std::string& text);

// Scenario document:
//   { "field": <curvature config>, "interior": [[coords...]],
//     "boundary_simple": [[coords...]],
//     "clusters": [{"z": [coords...], "m": int, "bbar": [[...]]}] }
// Declared points are refined by Newton to the nearby critical point and the
// scenario invariants are enforced.
BlowupScenario scenario_from_json(const std::string& text);

// A JSON array-of-arrays square matrix, e.g. the Q argument of the vortex
// solver.
Mat matrix_from_json(const std::string& text);

}  // namespace bubblekit
