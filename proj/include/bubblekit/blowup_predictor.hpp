#pragma once

#include <vector>

#include "bubblekit/bubbles_interactions.hpp"
#include "bubblekit/constants.hpp"
#include "bubblekit/curvature_model.hpp"

namespace bubblekit {

/// A boundary cluster: m >= 2 bubbles collapsing onto the critical point z of
/// the boundary restriction, with rescaled limit offsets `bbar` (a critical
/// point of the vortex Hamiltonian for Q = D^2K1(z)) written in the record's
/// boundary tangent frame.
struct ClusterSpec {
  CriticalPointRecord z;
  int m = 0;
  std::vector<Vec> bbar;  // m vectors of length n-1
};

struct BlowupScenario {
  CurvatureField field;
  std::vector<CriticalPointRecord> interior_points;        // laplacian < 0
  std::vector<CriticalPointRecord> simple_boundary_points;  // normal_derivative > 0
  std::vector<ClusterSpec> clusters;
};

// Checks the scenario invariants; throws DomainError on violation.
void validate_scenario(const BlowupScenario& s);

enum class BubbleType { interior = 0, boundary_simple = 1, cluster = 2 };

struct PredictedBubble {
  BubbleParam param;
  BubbleType type;
  int cluster_id = -1;  // index into scenario clusters, -1 otherwise
  double mu = 0.0;      // lambda for boundary bubbles, lambda^2 for interior
  double chart_correction = 0.0;  // |recomputed b - bbar|, cluster members only
};

struct Prediction {
  double eps = 0.0;
  std::vector<PredictedBubble> bubbles;
  std::vector<std::vector<Vec>> cluster_offsets;  // tangent offsets per cluster
};

// lambda = sqrt(-kappa1 * laplacian / (K * eps)); requires laplacian < 0
double predict_interior_lambda(const CriticalPointRecord& rec, double eps,
                               double kappa1);

// lambda = kappa2 * normal_derivative / (K * eps); requires derivative > 0
double predict_boundary_lambda(const CriticalPointRecord& rec, double eps,
                               double kappa2);

// The rescaling that sends cluster offsets to vortex coordinates:
//   b_i = scale * (a_i - <a_i,z> z). Inverting it places the cluster points
// at a_i = exp_map(z, bbar_i / scale). The table's kappa3 enters this scale
// reciprocally; see cluster_rescale's definition in the implementation.
double cluster_rescale(const ConstantsTable& table, double K_at_z,
                       double normal_derivative, double eps);

std::vector<SpherePoint> predict_cluster_positions(const ClusterSpec& cluster,
                                                   double eps,
                                                   const ConstantsTable& table);

// alpha = (lambda^{eps(n-2)/2} / K(a))^{(n-2)/4}, the exact zero of the
// leading gluing relation
double predict_alpha(double lambda, double K_at_a, double eps, int n);

Prediction predict(const BlowupScenario& s, double eps, const ConstantsTable& table);

struct MuPartition {
  std::vector<double> mu;                  // sorted ascending
  std::vector<int> order;                  // bubble index per sorted slot
  std::vector<int> boundary_set;           // bubble indices on the boundary
  std::vector<int> interior_set;
  std::vector<std::vector<int>> classes;   // comparability classes, ratio cutoff
};

MuPartition mu_partition(const std::vector<PredictedBubble>& bubbles,
                         double ratio_threshold = 1e3);

/// Measured residuals of the balancing system at the predicted parameters.
/// `leading` is the largest individual term of the index's equations;
/// `defining_ratio` is the residual of the balance that determines the
/// index's parameters (rate balance for interior and simple boundary points,
/// grouped position balance for cluster members) over `leading`.
struct IndexResidual {
  int index = 0;
  BubbleType type{};
  double lambda = 0.0;
  double leading = 0.0;
  double residual_E = 0.0;
  double residual_F = 0.0;
  double ratio_E = 0.0;
  double ratio_F = 0.0;
  double defining_ratio = 0.0;
  double theoretical_remainder = 0.0;
  double pairing = 0.0;        // cluster rows: barycentric combination
  double pairing_scale = 0.0;  // cluster rows: theoretical remainder scale
};

struct ResidualReport {
  double eps = 0.0;
  std::vector<IndexResidual> rows;
};

ResidualReport balancing_residual(const BlowupScenario& s, const Prediction& p,
                                  const ConstantsTable& table);

}  // namespace bubblekit
