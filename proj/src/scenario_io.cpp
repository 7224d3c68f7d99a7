#include "bubblekit/scenario_io.hpp"

#include <json.hpp>

#include "bubblekit/vortex.hpp"

namespace bubblekit {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON document");
  return j;
}

void require_keys(const json& obj, const char* where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) throw ParseError(std::string(where) + ": expected an object");
  for (const char* k : required)
    if (!obj.contains(k))
      throw ParseError(std::string(where) + ": missing key \"" + k + "\"");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : required)
      if (it.key() == k) known = true;
    for (const char* k : optional)
      if (it.key() == k) known = true;
    if (!known)
      throw ParseError(std::string(where) + ": unknown key \"" + it.key() + "\"");
  }
}

Vec vec_from_json(const json& arr, const char* where) {
  if (!arr.is_array()) throw ParseError(std::string(where) + ": expected an array");
  Vec v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw ParseError(std::string(where) + ": expected numbers");
    v[long(i)] = arr[i].get<double>();
  }
  return v;
}

CurvatureField field_from_parsed(const json& j) {
  require_keys(j, "field", {"n", "terms", "positivity_floor"});
  if (!j["n"].is_number_integer()) throw ParseError("field: key \"n\" must be an integer");
  const int n = j["n"].get<int>();
  if (!j["terms"].is_array()) throw ParseError("field: key \"terms\" must be an array");
  std::vector<FieldTerm> terms;
  for (const auto& t : j["terms"]) {
    require_keys(t, "field.terms[]", {"coeff", "powers"});
    FieldTerm term;
    if (!t["coeff"].is_number())
      throw ParseError("field.terms[]: key \"coeff\" must be a number");
    term.coeff = t["coeff"].get<double>();
    if (!t["powers"].is_array())
      throw ParseError("field.terms[]: key \"powers\" must be an array");
    for (const auto& p : t["powers"]) {
      if (!p.is_number_integer())
        throw ParseError("field.terms[]: key \"powers\" must hold integers");
      term.powers.push_back(p.get<int>());
    }
    terms.push_back(std::move(term));
  }
  if (!j["positivity_floor"].is_number())
    throw ParseError("field: key \"positivity_floor\" must be a number");
  CurvatureField field(n, std::move(terms), j["positivity_floor"].get<double>());
  validate_field(field);
  return field;
}

}  // namespace

CurvatureField field_from_json(const std::string& text) {
  return field_from_parsed(parse(text));
}

BlowupScenario scenario_from_json(const std::string& text) {
  const json j = parse(text);
  require_keys(j, "scenario", {"field"}, {"interior", "boundary_simple", "clusters"});
  BlowupScenario s{field_from_parsed(j["field"]), {}, {}, {}};

  if (j.contains("interior")) {
    for (const auto& arr : j["interior"]) {
      SpherePoint start(vec_from_json(arr, "scenario.interior[]"));
      s.interior_points.push_back(refine_critical_point(
          s.field, CriticalPointRecord::Kind::interior, start));
    }
  }
  if (j.contains("boundary_simple")) {
    for (const auto& arr : j["boundary_simple"]) {
      SpherePoint start(vec_from_json(arr, "scenario.boundary_simple[]"));
      s.simple_boundary_points.push_back(refine_critical_point(
          s.field, CriticalPointRecord::Kind::boundary, start));
    }
  }
  if (j.contains("clusters")) {
    for (const auto& cj : j["clusters"]) {
      require_keys(cj, "scenario.clusters[]", {"z", "m", "bbar"});
      ClusterSpec cl{refine_critical_point(
                         s.field, CriticalPointRecord::Kind::boundary,
                         SpherePoint(vec_from_json(cj["z"], "scenario.clusters[].z"))),
                     0,
                     {}};
      if (!cj["m"].is_number_integer())
        throw ParseError("scenario.clusters[]: key \"m\" must be an integer");
      cl.m = cj["m"].get<int>();
      if (!cj["bbar"].is_array())
        throw ParseError("scenario.clusters[]: key \"bbar\" must be an array");
      for (const auto& row : cj["bbar"])
        cl.bbar.push_back(vec_from_json(row, "scenario.clusters[].bbar[]"));
      if (int(cl.bbar.size()) != cl.m)
        throw ParseError("scenario.clusters[]: bbar must hold m rows");
      // refine bbar to the nearby vortex critical point so the scenario
      // invariant |grad F| < 1e-10 holds exactly
      std::vector<Vec> xi = cl.bbar;
      if (!newton_run(cl.z.hessian_tangential, s.field.n(), xi))
        throw ParseError("scenario.clusters[]: bbar does not refine to a critical point");
      for (int i = 0; i < cl.m; ++i) {
        if ((xi[size_t(i)] - cl.bbar[size_t(i)]).norm() > 1e-2)
          throw ParseError("scenario.clusters[]: bbar is far from a critical point");
        cl.bbar[size_t(i)] = xi[size_t(i)];
      }
      s.clusters.push_back(std::move(cl));
    }
  }
  validate_scenario(s);
  return s;
}

Mat matrix_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected an array of rows");
  const size_t rows = j.size();
  Mat m = Mat::Zero(long(rows), long(rows));
  for (size_t r = 0; r < rows; ++r) {
    const Vec row = vec_from_json(j[r], "matrix row");
    if (size_t(row.size()) != rows)
      throw ParseError("matrix: must be square (array of equal-length rows)");
    m.row(long(r)) = row;
  }
  return m;
}

}  // namespace bubblekit
