#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "bubblekit.h"
#include "bubblekit/constants.hpp"
#include "bubblekit/scenario_io.hpp"
#include "bubblekit/shipped_scenarios.hpp"

using namespace bubblekit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kScenarioDir = BUBBLEKIT_SCENARIO_DIR;

}  // namespace

TEST_CASE("field ingestion enforces the exact schema") {
  const char* good = R"({
    "n": 5,
    "terms": [{"coeff": 1.0, "powers": [0,0,0,0,0,0]},
              {"coeff": 1.0, "powers": [0,0,0,0,0,1]}],
    "positivity_floor": 0.9
  })";
  const CurvatureField field = field_from_json(good);
  CHECK(field.n() == 5);
  CHECK(field.terms().size() == 2);

  CHECK_THROWS_WITH_AS(
      field_from_json(R"({"n": 5, "terms": [], "positivity_floor": 1, "extra": 3})"),
      doctest::Contains("unknown key \"extra\""), ParseError);
  CHECK_THROWS_WITH_AS(field_from_json(R"({"n": 5, "terms": []})"),
                       doctest::Contains("missing key \"positivity_floor\""),
                       ParseError);
  CHECK_THROWS_AS(field_from_json("not json at all"), ParseError);
  CHECK_THROWS_AS(field_from_json(R"({"n": 5.5, "terms": [], "positivity_floor": 1})"),
                  ParseError);
  // schema fine but the polynomial dips below its floor
  CHECK_THROWS_AS(field_from_json(R"({
    "n": 5,
    "terms": [{"coeff": 1.0, "powers": [1,0,0,0,0,0]}],
    "positivity_floor": 0.5
  })"),
                  DomainError);
}

TEST_CASE("shipped scenario files match the built-in definitions") {
  {
    const BlowupScenario file =
        scenario_from_json(slurp(kScenarioDir + "/interior_point.json"));
    const BlowupScenario code = shipped_interior_scenario();
    REQUIRE(file.interior_points.size() == 1);
    CHECK(geodesic_distance(file.interior_points[0].location,
                            code.interior_points[0].location) < 1e-10);
    CHECK(file.interior_points[0].laplacian ==
          doctest::Approx(code.interior_points[0].laplacian).epsilon(1e-12));
  }
  {
    const BlowupScenario file =
        scenario_from_json(slurp(kScenarioDir + "/boundary_simple.json"));
    const BlowupScenario code = shipped_boundary_scenario();
    REQUIRE(file.simple_boundary_points.size() == 1);
    CHECK(geodesic_distance(file.simple_boundary_points[0].location,
                            code.simple_boundary_points[0].location) < 1e-10);
  }
  {
    const BlowupScenario file =
        scenario_from_json(slurp(kScenarioDir + "/cluster_m3.json"));
    const BlowupScenario code = shipped_cluster_scenario();
    REQUIRE(file.clusters.size() == 1);
    REQUIRE(file.clusters[0].m == 3);
    for (int i = 0; i < 3; ++i)
      CHECK((file.clusters[0].bbar[size_t(i)] - code.clusters[0].bbar[size_t(i)])
                .norm() < 1e-9);
  }
}

TEST_CASE("scenario ingestion rejections") {
  CHECK_THROWS_WITH_AS(scenario_from_json(R"({"interior": []})"),
                       doctest::Contains("missing key \"field\""), ParseError);
  const char* bad_cluster = R"({
    "field": {"n": 5,
      "terms": [{"coeff": 3.0, "powers": [0,0,0,0,0,0]},
                {"coeff": 1.0, "powers": [0,0,0,0,0,1]},
                {"coeff": 0.5, "powers": [1,0,0,0,0,0]},
                {"coeff": 0.5, "powers": [0,2,0,0,0,0]}],
      "positivity_floor": 2.0},
    "clusters": [{"z": [1,0,0,0,0,0], "m": 2,
                  "bbar": [[9.0,0,0,0],[-9.0,0,0,0]]}]
  })";
  // bbar far from any vortex critical point
  CHECK_THROWS_AS(scenario_from_json(bad_cluster), ParseError);
}

TEST_CASE("matrix ingestion") {
  const Mat m = matrix_from_json("[[1,2],[3,4]]");
  CHECK(m(1, 0) == 3.0);
  CHECK_THROWS_AS(matrix_from_json("[[1,2],[3]]"), ParseError);
  CHECK_THROWS_AS(matrix_from_json("{}"), ParseError);
}

TEST_CASE("C API constants") {
  double values[9], errors[9];
  REQUIRE(bk_constants_compute(5, 1e-10, values, errors) == BK_OK);
  const ConstantsTable t = compute_constants(5);
  CHECK(values[0] == t.c0);
  CHECK(values[1] == t.c2);
  CHECK(values[5] == t.c6);
  CHECK(values[8] == t.kappa3);
  CHECK(errors[1] >= 0.0);

  CHECK(bk_constants_compute(4, 1e-10, values, errors) == BK_ERR_DOMAIN);
  CHECK(std::string(bk_last_error()).find("n must be >= 5") != std::string::npos);
  CHECK(bk_constants_compute(5, 1e-10, nullptr, errors) == BK_ERR_INVALID_ARGUMENT);
  CHECK(bk_constants_compute(5, -1.0, values, errors) == BK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API vortex solver") {
  const int n = 5, m = 2, d = n - 1;
  std::vector<double> q(size_t(d * d), 0.0);
  for (int i = 0; i < d; ++i) q[size_t(i * d + i)] = 1.0;

  bk_vortex_result* res = nullptr;
  REQUIRE(bk_vortex_solve(n, m, q.data(), 100, 7, &res) == BK_OK);
  REQUIRE(res != nullptr);
  REQUIRE(bk_vortex_count(res) >= 1);

  double energy, virial;
  int morse;
  std::vector<double> xi(size_t(m * d));
  REQUIRE(bk_vortex_get(res, 0, &energy, &virial, &morse, xi.data()) == BK_OK);
  double norm5 = 0.0;
  for (int k = 0; k < d; ++k) norm5 += xi[size_t(k)] * xi[size_t(k)];
  norm5 = std::pow(std::sqrt(norm5), 5);
  CHECK(std::abs(norm5 - 3.0 / 16.0) < 1e-10);
  CHECK(std::abs(virial) < 1e-9);

  int converged, diverged, vrej, srej, obstructed;
  bk_vortex_diagnostics(res, &converged, &diverged, &vrej, &srej, &obstructed);
  CHECK(converged + diverged == 100);
  CHECK(obstructed == 0);

  CHECK(bk_vortex_get(res, 999, &energy, &virial, &morse, xi.data()) ==
        BK_ERR_INVALID_ARGUMENT);
  bk_vortex_free(res);

  CHECK(bk_vortex_solve(n, m, nullptr, 100, 7, &res) == BK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API scenario, prediction and report") {
  const std::string text = slurp(kScenarioDir + "/cluster_m3.json");
  bk_scenario* scen = nullptr;
  REQUIRE(bk_scenario_parse(text.c_str(), &scen) == BK_OK);
  CHECK(bk_scenario_dim(scen) == 5);

  bk_prediction* pred = nullptr;
  REQUIRE(bk_predict(scen, 1e-4, &pred) == BK_OK);
  REQUIRE(bk_prediction_count(pred) == 3);
  int type;
  double a[6], lambda, alpha, mu, chart;
  REQUIRE(bk_prediction_get(pred, 0, &type, a, &lambda, &alpha, &mu, &chart) == BK_OK);
  CHECK(type == 2);
  CHECK(lambda > 100.0);
  CHECK(mu == lambda);
  CHECK(std::abs(a[5]) < 1e-12);  // boundary bubble
  bk_prediction_free(pred);

  bk_report* rep = nullptr;
  REQUIRE(bk_residual_report(scen, 1e-4, &rep) == BK_OK);
  REQUIRE(bk_report_count(rep) == 3);
  int index, rtype;
  double lam, leading, rE, rF, qE, qF, def, rem, pair, pscale;
  REQUIRE(bk_report_get(rep, 1, &index, &rtype, &lam, &leading, &rE, &rF, &qE, &qF,
                        &def, &rem, &pair, &pscale) == BK_OK);
  CHECK(index == 1);
  CHECK(rtype == 2);
  CHECK(leading > 0.0);
  CHECK(pscale > 0.0);
  bk_report_free(rep);
  bk_scenario_free(scen);

  // parse failures surface the offending key
  bk_scenario* bad = nullptr;
  CHECK(bk_scenario_parse(R"({"field": 1, "oops": 2})", &bad) == BK_ERR_PARSE);
  CHECK(std::string(bk_last_error()).find("oops") != std::string::npos);
  CHECK(bk_scenario_parse("{", &bad) == BK_ERR_PARSE);
}

TEST_CASE("C API verify accessors") {
  // smoke-level: run the suite once and read a record back
  bk_verify_result* v = nullptr;
  REQUIRE(bk_verify_run(0, &v) == BK_OK);
  REQUIRE(bk_verify_count(v) > 20);
  char name[16];
  int criterion, pass;
  double measured, bound;
  REQUIRE(bk_verify_get(v, 0, &criterion, name, sizeof name, &pass, &measured,
                        &bound) == BK_OK);
  CHECK(criterion == 1);
  CHECK(std::strlen(name) < sizeof name);
  CHECK(bk_verify_failures(v) == 0);
  bk_verify_free(v);
}
