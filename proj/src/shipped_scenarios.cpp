#include "bubblekit/shipped_scenarios.hpp"

#include <cmath>

#include "bubblekit/vortex.hpp"

namespace bubblekit {

namespace {

constexpr int kN = 5;

FieldTerm term(double coeff, std::initializer_list<int> powers) {
  return FieldTerm{coeff, std::vector<int>(powers)};
}

SpherePoint axis_point(int k) {
  Vec v = Vec::Zero(kN + 1);
  v[k] = 1.0;
  return SpherePoint(v);
}

}  // namespace

BlowupScenario shipped_interior_scenario() {
  CurvatureField field(kN,
                       {term(1.0, {0, 0, 0, 0, 0, 0}), term(1.0, {0, 0, 0, 0, 0, 1})},
                       0.9);
  BlowupScenario s{std::move(field), {}, {}, {}};
  s.interior_points.push_back(refine_critical_point(
      s.field, CriticalPointRecord::Kind::interior, axis_point(kN)));
  validate_scenario(s);
  return s;
}

BlowupScenario shipped_boundary_scenario() {
  CurvatureField field(kN,
                       {term(3.0, {0, 0, 0, 0, 0, 0}), term(1.0, {0, 0, 0, 0, 0, 1}),
                        term(0.5, {1, 0, 0, 0, 0, 0})},
                       2.0);
  BlowupScenario s{std::move(field), {}, {}, {}};
  s.simple_boundary_points.push_back(refine_critical_point(
      s.field, CriticalPointRecord::Kind::boundary, axis_point(0)));
  validate_scenario(s);
  return s;
}

BlowupScenario shipped_cluster_scenario() {
  CurvatureField field(kN,
                       {term(3.0, {0, 0, 0, 0, 0, 0}), term(1.0, {0, 0, 0, 0, 0, 1}),
                        term(0.5, {1, 0, 0, 0, 0, 0}), term(0.5, {0, 2, 0, 0, 0, 0})},
                       2.0);
  BlowupScenario s{std::move(field), {}, {}, {}};
  ClusterSpec cl{refine_critical_point(s.field, CriticalPointRecord::Kind::boundary,
                                       axis_point(0)),
                 3,
                 {}};
  // collinear limit configuration (g, 0, -g) along the positive eigendirection
  // sigma = 1/2 of D^2K1(e1); stationarity fixes g^n = (n-2)(1+2^{1-n})/sigma
  const double sigma = 0.5;
  const double gamma = std::pow(
      double(kN - 2) * (1.0 + std::pow(2.0, 1 - kN)) / sigma, 1.0 / double(kN));
  Vec dir = Vec::Zero(kN - 1);
  dir[0] = 1.0;
  cl.bbar = {gamma * dir, Vec::Zero(kN - 1), -gamma * dir};
  std::vector<Vec> xi = cl.bbar;
  if (newton_run(cl.z.hessian_tangential, kN, xi)) cl.bbar = xi;
  s.clusters.push_back(std::move(cl));
  validate_scenario(s);
  return s;
}

BlowupScenario shipped_two_interior_scenario() {
  CurvatureField field(kN,
                       {term(3.5, {0, 0, 0, 0, 0, 0}), term(1.0, {0, 0, 0, 0, 0, 1}),
                        term(0.8, {2, 0, 0, 0, 0, 0})},
                       3.0);
  BlowupScenario s{std::move(field), {}, {}, {}};
  // interior tangential-gradient zeros sit at x6 = 1/1.6, x1 = +-sqrt(1-x6^2)
  const double h = 1.0 / 1.6;
  const double x1 = std::sqrt(1.0 - h * h);
  for (double sgn : {1.0, -1.0}) {
    Vec v = Vec::Zero(kN + 1);
    v[0] = sgn * x1;
    v[kN] = h;
    s.interior_points.push_back(refine_critical_point(
        s.field, CriticalPointRecord::Kind::interior, SpherePoint(v)));
  }
  validate_scenario(s);
  return s;
}

}  // namespace bubblekit
