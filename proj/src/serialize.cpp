#include "kahlerlab/serialize.hpp"

#include <cmath>
#include <sstream>

#include "kahlerlab/error.hpp"

namespace kl {

namespace {

Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx from_cjson(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("json: complex numbers are [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json key_to_json(const MonomialKey& k) {
  return Json{{"holo", k.holo.entries()}, {"anti", k.anti.entries()}};
}

MonomialKey key_from_json(int n, const Json& j) {
  return make_key(n, j.at("holo").get<std::vector<int>>(), j.at("anti").get<std::vector<int>>());
}

}  // namespace

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? Json("nan") : Json(v > 0 ? "inf" : "-inf");
}

Json chart_to_json(const Chart& chart) {
  return Json{{"n", chart.n()}, {"resolution", chart.resolution()}, {"periods", chart.periods()}};
}

ChartPtr chart_from_json(const Json& j) {
  return make_chart(j.at("n").get<int>(), j.at("resolution").get<std::vector<int>>(),
                    j.at("periods").get<std::vector<double>>());
}

Json field_to_json(const ScalarField& f) {
  Json a = Json::array();
  for (std::size_t p = 0; p < f.size(); ++p) a.push_back(cjson(f[p]));
  return a;
}

ScalarField field_from_json(const ChartPtr& chart, const Json& j) {
  if (!j.is_array() || j.size() != chart->points()) throw InvalidArgument("json: scalar grid has the wrong size");
  std::vector<cplx> v;
  v.reserve(j.size());
  for (const Json& z : j) v.push_back(from_cjson(z));
  return ScalarField(chart, std::move(v));
}

Json field_container_to_json(const ScalarField& f) {
  return Json{{"chart", chart_to_json(*f.chart())}, {"data", field_to_json(f)}};
}

ScalarField field_container_from_json(const Json& j) {
  return field_from_json(chart_from_json(j.at("chart")), j.at("data"));
}

Json form_container_to_json(const ScalarForm& f) {
  Json j = form_to_json(f);
  j["chart"] = chart_to_json(*f.chart());
  return j;
}

ScalarForm form_container_from_json(const Json& j) { return form_from_json(chart_from_json(j.at("chart")), j); }

Json matrix_field_to_json(const MatrixField& m) {
  const int r = m.rank();
  Json grid = Json::array();
  for (std::size_t p = 0; p < m.points(); ++p) {
    Json rows = Json::array();
    for (int i = 0; i < r; ++i) {
      Json row = Json::array();
      for (int k = 0; k < r; ++k) row.push_back(cjson(m.at(p)[i * r + k]));
      rows.push_back(std::move(row));
    }
    grid.push_back(std::move(rows));
  }
  return Json{{"rank", r}, {"grid", std::move(grid)}};
}

MatrixField matrix_field_from_json(const ChartPtr& chart, const Json& j) {
  const int r = j.at("rank").get<int>();
  const Json& grid = j.at("grid");
  if (!grid.is_array() || grid.size() != chart->points()) throw InvalidArgument("json: matrix grid has the wrong size");
  MatrixField m(chart, r);
  for (std::size_t p = 0; p < chart->points(); ++p) {
    const Json& rows = grid[p];
    if (rows.size() != std::size_t(r)) throw InvalidArgument("json: matrix has the wrong number of rows");
    for (int i = 0; i < r; ++i) {
      if (rows[i].size() != std::size_t(r)) throw InvalidArgument("json: matrix has the wrong number of columns");
      for (int k = 0; k < r; ++k) m.at(p)[i * r + k] = from_cjson(rows[i][k]);
    }
  }
  return m;
}

Json form_to_json(const ScalarForm& f) {
  Json terms = Json::array();
  for (const auto& [k, c] : f.terms()) terms.push_back(Json{{"key", key_to_json(k)}, {"data", field_to_json(c)}});
  return Json{{"p", f.p()}, {"q", f.q()}, {"monomials", std::move(terms)}};
}

ScalarForm form_from_json(const ChartPtr& chart, const Json& j) {
  ScalarForm f(chart, j.at("p").get<int>(), j.at("q").get<int>());
  for (const Json& t : j.at("monomials")) f.add(key_from_json(chart->n(), t.at("key")), field_from_json(chart, t.at("data")));
  return f;
}

Json end_form_to_json(const EndForm& f) {
  Json terms = Json::array();
  for (const auto& [k, m] : f.terms())
    terms.push_back(Json{{"key", key_to_json(k)}, {"data", matrix_field_to_json(m)}});
  return Json{{"rank", f.rank()}, {"p", f.p()}, {"q", f.q()}, {"monomials", std::move(terms)}};
}

EndForm end_form_from_json(const ChartPtr& chart, const Json& j) {
  EndForm f(chart, j.at("rank").get<int>(), j.at("p").get<int>(), j.at("q").get<int>());
  for (const Json& t : j.at("monomials"))
    f.add(key_from_json(chart->n(), t.at("key")), matrix_field_from_json(chart, t.at("data")));
  return f;
}

Json instance_to_json(const HiggsInstance& inst) {
  Json j{{"chart", chart_to_json(*inst.chart())},
         {"rank", inst.rank()},
         {"metric", matrix_field_to_json(inst.metric().matrix())},
         {"higgs", end_form_to_json(inst.higgs())},
         {"tolerances", Json{{"holomorphy", inst.tolerances().holomorphy}, {"wedge", inst.tolerances().wedge}}}};
  j["synthetic_curvature"] = inst.synthetic_curvature() ? end_form_to_json(inst.curvature()) : Json(nullptr);
  if (inst.synthetic_connection())
    j["synthetic_connection"] =
        Json{{"a10", end_form_to_json(inst.connection())}, {"a01", end_form_to_json(inst.connection01())}};
  else
    j["synthetic_connection"] = nullptr;
  return j;
}

HiggsInstance instance_from_json(const Json& j) {
  const ChartPtr chart = chart_from_json(j.at("chart"));
  MetricField h(matrix_field_from_json(chart, j.at("metric")));
  EndForm phi = end_form_from_json(chart, j.at("higgs"));
  HiggsTolerances tol;
  if (j.contains("tolerances")) {
    tol.holomorphy = j["tolerances"].at("holomorphy").get<double>();
    tol.wedge = j["tolerances"].at("wedge").get<double>();
  }
  std::optional<EndForm> f;
  if (j.contains("synthetic_curvature") && !j["synthetic_curvature"].is_null())
    f = end_form_from_json(chart, j["synthetic_curvature"]);
  std::optional<SyntheticConnection> conn;
  if (j.contains("synthetic_connection") && !j["synthetic_connection"].is_null())
    conn = SyntheticConnection{end_form_from_json(chart, j["synthetic_connection"].at("a10")),
                               end_form_from_json(chart, j["synthetic_connection"].at("a01"))};
  return HiggsInstance(std::move(h), std::move(phi), std::move(f), std::move(conn), tol);
}

Json su2_config_to_json(const SU2Config& cfg) {
  return Json{{"chart", chart_to_json(*cfg.chart())},
              {"A1", matrix_field_to_json(cfg.a1())},
              {"A2", matrix_field_to_json(cfg.a2())},
              {"phi1", matrix_field_to_json(cfg.phi1())},
              {"phi2", matrix_field_to_json(cfg.phi2())}};
}

SU2Config su2_config_from_json(const Json& j) {
  const ChartPtr chart = chart_from_json(j.at("chart"));
  return SU2Config(matrix_field_from_json(chart, j.at("A1")), matrix_field_from_json(chart, j.at("A2")),
                   matrix_field_from_json(chart, j.at("phi1")), matrix_field_from_json(chart, j.at("phi2")));
}

Json report_to_json(const FunctionalReport& rep) {
  Json values = Json::object();
  for (const auto& [k, v] : rep.values) values[k] = json_number(v);
  Json residuals = Json::object();
  for (const auto& [k, v] : rep.identity_residuals) residuals[k] = json_number(v);
  Json j{{"name", rep.name}, {"values", std::move(values)}, {"identity_residuals", std::move(residuals)}};
  if (!rep.status.empty()) j["status"] = rep.status;
  if (!rep.trace.empty()) {
    Json rows = Json::array();
    for (const FlowRow& r : rep.trace)
      rows.push_back(Json{{"iteration", r.iteration},
                          {"value", json_number(r.value)},
                          {"step", json_number(r.step)},
                          {"parallel_residual", json_number(r.parallel_residual)},
                          {"curvature_residual", json_number(r.curvature_residual)}});
    j["trace"] = std::move(rows);
  }
  return j;
}

Json check_to_json(const HiggsCheck& chk) {
  Json pairs = Json::object();
  for (const auto& [k, v] : chk.commutator_norms) pairs[k] = json_number(v);
  return Json{{"holomorphy_norm", json_number(chk.holomorphy_norm)},
              {"holomorphy_tolerance", chk.tolerances.holomorphy},
              {"wedge_norm", json_number(chk.wedge_norm)},
              {"wedge_tolerance", chk.tolerances.wedge},
              {"commutator_norms", std::move(pairs)},
              {"pass", chk.pass()}};
}

std::string trace_to_csv(const FunctionalReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "iteration,value,step_size,parallel_residual,curvature_residual\n";
  for (const FlowRow& r : rep.trace)
    os << r.iteration << ',' << r.value << ',' << r.step << ',' << r.parallel_residual << ',' << r.curvature_residual
       << '\n';
  return os.str();
}

}  // namespace kl
