#pragma once

#include <string>

#include "json.hpp"
#include "kahlerlab/functionals.hpp"
#include "kahlerlab/hitchin2d.hpp"

namespace kl {

using Json = nlohmann::ordered_json;

// Non-finite doubles have no JSON representation; they are written as "nan", "inf" or "-inf".
Json json_number(double v);

// Complex numbers are [re, im]; matrices are nested row arrays; grids list points in storage order.
Json chart_to_json(const Chart& chart);
ChartPtr chart_from_json(const Json& j);

Json field_to_json(const ScalarField& f);
ScalarField field_from_json(const ChartPtr& chart, const Json& j);
// Self-describing containers: {"chart": {...}, "data": [...]} and forms with a "monomials" list.
Json field_container_to_json(const ScalarField& f);
ScalarField field_container_from_json(const Json& j);
Json form_container_to_json(const ScalarForm& f);
ScalarForm form_container_from_json(const Json& j);
Json matrix_field_to_json(const MatrixField& m);
MatrixField matrix_field_from_json(const ChartPtr& chart, const Json& j);

Json form_to_json(const ScalarForm& f);
ScalarForm form_from_json(const ChartPtr& chart, const Json& j);
Json end_form_to_json(const EndForm& f);
EndForm end_form_from_json(const ChartPtr& chart, const Json& j);

// Chart, metric grid, Higgs monomials and the optional synthetic curvature and connection.
Json instance_to_json(const HiggsInstance& inst);
HiggsInstance instance_from_json(const Json& j);

Json su2_config_to_json(const SU2Config& cfg);
SU2Config su2_config_from_json(const Json& j);

Json report_to_json(const FunctionalReport& rep);
Json check_to_json(const HiggsCheck& chk);
// Iteration, value, step size and the residual pair, one row per accepted step.
std::string trace_to_csv(const FunctionalReport& rep);

}  // namespace kl
