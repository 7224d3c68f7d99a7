#include <doctest.h>

#include <cmath>

#include "bubblekit/blowup_predictor.hpp"
#include "bubblekit/common.hpp"
#include "bubblekit/shipped_scenarios.hpp"

using namespace bubblekit;

namespace {

constexpr int kN = 5;

SpherePoint north() {
  Vec v = Vec::Zero(kN + 1);
  v[kN] = 1.0;
  return SpherePoint(v);
}

SpherePoint boundary_axis() {
  Vec v = Vec::Zero(kN + 1);
  v[0] = 1.0;
  return SpherePoint(v);
}

CriticalPointRecord synthetic_interior(double K, double laplacian) {
  CriticalPointRecord rec{north(),
                          CriticalPointRecord::Kind::interior,
                          K,
                          laplacian,
                          0.0,
                          Mat::Identity(kN + 1, kN),
                          -Mat::Identity(kN, kN),
                          0.0,
                          1.0};
  return rec;
}

CriticalPointRecord synthetic_boundary(double K, double dnu) {
  CriticalPointRecord rec{boundary_axis(),
                          CriticalPointRecord::Kind::boundary,
                          K,
                          0.0,
                          dnu,
                          Mat::Identity(kN + 1, kN - 1),
                          Mat::Identity(kN - 1, kN - 1),
                          0.0,
                          1.0};
  return rec;
}

}  // namespace

TEST_CASE("interior rate law") {
  const ConstantsTable t = compute_constants(kN);
  // K = 1 and laplacian = -1/kappa1 makes lambda(1e-4) exactly 100
  const CriticalPointRecord rec = synthetic_interior(1.0, -1.0 / t.kappa1);
  CHECK(predict_interior_lambda(rec, 1e-4, t.kappa1) ==
        doctest::Approx(100.0).epsilon(1e-14));

  // square-root law: lambda(eps/4) = 2 lambda(eps)
  const CriticalPointRecord rec2 = synthetic_interior(1.7, -2.3);
  const double l1 = predict_interior_lambda(rec2, 1e-3, t.kappa1);
  const double l2 = predict_interior_lambda(rec2, 2.5e-4, t.kappa1);
  CHECK(l2 == doctest::Approx(2.0 * l1).epsilon(1e-14));

  // round trip recovers kappa1 exactly
  CHECK(l1 * l1 * 1e-3 * rec2.value / (-rec2.laplacian) ==
        doctest::Approx(t.kappa1).epsilon(1e-14));

  CHECK_THROWS_AS(predict_interior_lambda(synthetic_interior(1.0, 0.5), 1e-3, t.kappa1),
                  DomainError);
}

TEST_CASE("boundary rate law") {
  const ConstantsTable t = compute_constants(kN);
  const CriticalPointRecord rec = synthetic_boundary(1.0, 1.0);
  const double eps = 1e-3;
  CHECK(predict_boundary_lambda(rec, eps, t.kappa2) * eps ==
        doctest::Approx(t.kappa2).epsilon(1e-14));

  // 1/eps law
  CHECK(predict_boundary_lambda(rec, eps / 10.0, t.kappa2) ==
        doctest::Approx(10.0 * predict_boundary_lambda(rec, eps, t.kappa2))
            .epsilon(1e-14));

  // linearity in the normal derivative at equal K
  const CriticalPointRecord rec2 = synthetic_boundary(1.0, 2.0);
  CHECK(predict_boundary_lambda(rec2, eps, t.kappa2) ==
        doctest::Approx(2.0 * predict_boundary_lambda(rec, eps, t.kappa2))
            .epsilon(1e-14));

  CHECK_THROWS_AS(predict_boundary_lambda(synthetic_boundary(1.0, -1.0), eps, t.kappa2),
                  DomainError);
}

TEST_CASE("gluing coefficient") {
  // eps = 0 and K = 1: alpha = 1
  CHECK(predict_alpha(123.0, 1.0, 0.0, kN) == 1.0);
  // eps ln lambda = 0.01: alpha = exp(0.01 (n-2)^2/8)
  const double lambda = std::exp(0.01 / 1e-3);
  CHECK(predict_alpha(lambda, 1.0, 1e-3, kN) ==
        doctest::Approx(std::exp(0.01 * 9.0 / 8.0)).epsilon(1e-12));
  // exact round trip of the leading relation
  const double a = predict_alpha(57.0, 2.2, 1e-3, kN);
  CHECK(std::pow(a, 4.0 / (kN - 2)) * 2.2 * std::pow(57.0, -1e-3 * (kN - 2) / 2.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cluster positions") {
  const ConstantsTable t = compute_constants(kN);
  const BlowupScenario sc = shipped_cluster_scenario();
  const ClusterSpec& cl = sc.clusters[0];

  // zero offset stays at the cluster center
  ClusterSpec degenerate = cl;
  degenerate.bbar = {Vec::Zero(kN - 1), cl.bbar[0]};
  degenerate.m = 2;
  const auto pts = predict_cluster_positions(degenerate, 1e-4, t);
  CHECK(geodesic_distance(pts[0], cl.z.location) == 0.0);

  // offsets beyond the normal chart are rejected (huge eps shrinks the scale)
  CHECK_THROWS_AS(predict_cluster_positions(cl, 0.2, t), DomainError);

  // the forward rescaling reproduces bbar once the chart factor is unwound
  for (double eps : {1e-3, 1e-5}) {
    const double scale = cluster_rescale(t, cl.z.value, cl.z.normal_derivative, eps);
    const auto placed = predict_cluster_positions(cl, eps, t);
    for (int i = 0; i < cl.m; ++i) {
      const Vec v = cl.z.frame * (cl.bbar[size_t(i)] / scale);
      const Vec back = scale * (cl.z.frame.transpose() *
                                tangent_project(placed[size_t(i)], cl.z.location).vec);
      const double r = v.norm();
      const double chart = r > 0.0 ? r / std::sin(r) : 1.0;
      CHECK((chart * back - cl.bbar[size_t(i)]).norm() < 1e-10);
    }
  }

  // pairwise separations scale like eps^{(n-2)/n}
  std::vector<double> scaled;
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    const auto placed = predict_cluster_positions(cl, eps, t);
    scaled.push_back(geodesic_distance(placed[0], placed[2]) / std::pow(eps, 0.6));
  }
  for (double s : scaled)
    CHECK(std::abs(s / scaled.front() - 1.0) < 1e-3);
}

TEST_CASE("full prediction on the shipped scenarios") {
  const ConstantsTable t = compute_constants(kN);
  for (const BlowupScenario& sc :
       {shipped_interior_scenario(), shipped_boundary_scenario(),
        shipped_cluster_scenario()}) {
    const Prediction p = predict(sc, 1e-4, t);
    CHECK(!p.bubbles.empty());
    for (const auto& b : p.bubbles) {
      CHECK(b.param.lambda > 10.0);  // default regime floor
      CHECK(1e-4 * std::log(b.param.lambda) < 0.1);
      CHECK(b.param.alpha > 0.0);
      if (b.param.boundary_flag) {
        CHECK(std::abs(b.param.a.height()) <= 1e-10);
        CHECK(b.mu == b.param.lambda);
      } else {
        CHECK(b.mu == b.param.lambda * b.param.lambda);
      }
    }
  }
}

TEST_CASE("mu partition") {
  auto bubble_with_mu = [](double lambda, bool boundary) {
    Vec v = Vec::Zero(kN + 1);
    if (boundary)
      v[0] = 1.0;
    else
      v[kN] = 1.0;
    PredictedBubble b{make_bubble(SpherePoint(v), lambda),
                      boundary ? BubbleType::boundary_simple : BubbleType::interior, -1,
                      0.0, 0.0};
    b.mu = boundary ? lambda : lambda * lambda;
    return b;
  };

  // all boundary at equal rate: one class
  {
    std::vector<PredictedBubble> bs = {bubble_with_mu(100.0, true),
                                       bubble_with_mu(100.0, true),
                                       bubble_with_mu(100.0, true)};
    const MuPartition part = mu_partition(bs);
    CHECK(part.classes.size() == 1);
    CHECK(part.boundary_set.size() == 3);
  }
  // interior lambda = 100 vs boundary lambda = 1e4: equal mu, same class
  {
    std::vector<PredictedBubble> bs = {bubble_with_mu(100.0, false),
                                       bubble_with_mu(1e4, true)};
    const MuPartition part = mu_partition(bs);
    CHECK(part.classes.size() == 1);
    CHECK(part.mu[0] == part.mu[1]);
  }
  // boundary pair at rate ratio 1e6: two classes
  {
    std::vector<PredictedBubble> bs = {bubble_with_mu(10.0, true),
                                       bubble_with_mu(1e7, true)};
    const MuPartition part = mu_partition(bs);
    CHECK(part.classes.size() == 2);
  }
}

TEST_CASE("residual report structure and decay") {
  const ConstantsTable t = compute_constants(kN);
  const BlowupScenario sc = shipped_interior_scenario();
  double prev = 1e300;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const Prediction p = predict(sc, eps, t);
    const ResidualReport r = balancing_residual(sc, p, t);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].type == BubbleType::interior);
    CHECK(r.rows[0].leading > 0.0);
    CHECK(std::isfinite(r.rows[0].ratio_E));
    CHECK(std::isfinite(r.rows[0].ratio_F));
    CHECK(r.rows[0].defining_ratio < prev);
    prev = r.rows[0].defining_ratio;
  }
}

TEST_CASE("simple boundary point: rate balance cancels to rounding") {
  const ConstantsTable t = compute_constants(kN);
  const BlowupScenario sc = shipped_boundary_scenario();
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const Prediction p = predict(sc, eps, t);
    const ResidualReport r = balancing_residual(sc, p, t);
    REQUIRE(r.rows.size() == 1);
    // the predicted rate is the exact algebraic root of the assembled balance
    CHECK(r.rows[0].residual_E <= 1e-12 * r.rows[0].leading);
    CHECK(r.rows[0].residual_E / eps <= 1e-10);
  }
}

TEST_CASE("two interior points decouple as eps shrinks") {
  const ConstantsTable t = compute_constants(kN);
  const BlowupScenario sc = shipped_two_interior_scenario();
  REQUIRE(sc.interior_points.size() == 2);
  double prev = 1e300;
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    const Prediction p = predict(sc, eps, t);
    REQUIRE(p.bubbles.size() == 2);
    const double e = interaction_eps(kN, p.bubbles[0].param, p.bubbles[1].param);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("mixed scenario: interior and boundary bubbles coexist") {
  // K = 1 + x6 + x1/4 carries an interior maximum along (1/4,0,...,0,1) and
  // boundary critical points at +-e1 with inward derivative 1
  CurvatureField field(kN,
                       {FieldTerm{1.0, {0, 0, 0, 0, 0, 0}},
                        FieldTerm{1.0, {0, 0, 0, 0, 0, 1}},
                        FieldTerm{0.25, {1, 0, 0, 0, 0, 0}}},
                       0.7);
  Vec guess = Vec::Zero(kN + 1);
  guess[0] = 0.24;
  guess[kN] = 0.97;
  guess /= guess.norm();
  BlowupScenario sc{std::move(field), {}, {}, {}};
  sc.interior_points.push_back(refine_critical_point(
      sc.field, CriticalPointRecord::Kind::interior, SpherePoint(guess)));
  sc.simple_boundary_points.push_back(refine_critical_point(
      sc.field, CriticalPointRecord::Kind::boundary, boundary_axis()));
  validate_scenario(sc);

  const ConstantsTable t = compute_constants(kN);
  double prev_int = 1e300;
  for (double eps : {1e-3, 1e-4}) {
    const Prediction p = predict(sc, eps, t);
    REQUIRE(p.bubbles.size() == 2);
    const MuPartition part = mu_partition(p.bubbles);
    CHECK(part.interior_set.size() == 1);
    CHECK(part.boundary_set.size() == 1);

    const ResidualReport r = balancing_residual(sc, p, t);
    REQUIRE(r.rows.size() == 2);
    for (const auto& row : r.rows) {
      CHECK(row.leading > 0.0);
      CHECK(std::isfinite(row.ratio_E));
      CHECK(std::isfinite(row.ratio_F));
      CHECK(row.theoretical_remainder > 0.0);
    }
    // the interior index keeps its Green self-term decay in company
    const IndexResidual& interior_row =
        r.rows[r.rows[0].type == BubbleType::interior ? 0 : 1];
    CHECK(interior_row.defining_ratio < prev_int);
    prev_int = interior_row.defining_ratio;
  }
}

TEST_CASE("scenario validation rejects broken records") {
  BlowupScenario sc = shipped_interior_scenario();
  sc.interior_points[0].laplacian = 1.0;
  CHECK_THROWS_AS(validate_scenario(sc), DomainError);

  BlowupScenario sb = shipped_boundary_scenario();
  sb.simple_boundary_points[0].normal_derivative = -1.0;
  CHECK_THROWS_AS(validate_scenario(sb), DomainError);

  BlowupScenario scl = shipped_cluster_scenario();
  scl.clusters[0].bbar[0][0] += 0.1;  // no longer a vortex critical point
  CHECK_THROWS_AS(validate_scenario(scl), DomainError);
}

TEST_CASE("predict rejects bad eps") {
  const ConstantsTable t = compute_constants(kN);
  const BlowupScenario sc = shipped_interior_scenario();
  CHECK_THROWS_AS(predict(sc, 0.0, t), DomainError);
  CHECK_THROWS_AS(predict(sc, -1e-3, t), DomainError);
  // too large an eps leaves the bubble regime (rate floor 1/tau)
  CHECK_THROWS_AS(predict(sc, 5e-2, t), DomainError);
}

TEST_CASE("bubble regime guard") {
  auto boundary = [](double offset) {
    Vec v = Vec::Zero(kN + 1);
    v[0] = std::cos(offset);
    v[1] = std::sin(offset);
    return SpherePoint(v);
  };
  std::vector<BubbleParam> good = {make_bubble(boundary(0.0), 200.0),
                                   make_bubble(boundary(0.5), 300.0)};
  CHECK(check_bubble_regime(kN, good).ok);
  std::vector<BubbleParam> slow = {make_bubble(boundary(0.0), 5.0)};
  CHECK(!check_bubble_regime(kN, slow).ok);
  std::vector<BubbleParam> close = {make_bubble(boundary(0.0), 200.0),
                                    make_bubble(boundary(1e-4), 200.0)};
  CHECK(!check_bubble_regime(kN, close).ok);
  CHECK(check_bubble_regime(kN, close).max_eps > 0.1);
}
