#pragma once

#include "boxlab/decomposition.hpp"
#include "boxlab/quantum.hpp"

#include <json.hpp>

#include <string>

namespace boxlab {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& q);
// Rounded to 12 significant digits.
Json float_json(double x);

// 2x2 rows indexed by setting, columns by outcome.
Json table_json(const SingleTable& t);
// {"entries": 4 rows in (x,y) order (0,0),(0,1),(1,0),(1,1), columns (a,b)}.
Json box_json(const Box222& box);
Box222 box_from_json(const Json& j);

Json model_json(const LhvLhsModel& model);
Json certificate_json(const Certificate& cert);
Json instance_json(const InstanceRecord& rec);
Json report_json(const DimensionReport& rep, bool with_instances = false);

// {"dimA", "dimB", "rho": [[[re, im], ...], ...]}
QState state_from_json(const Json& j);
Json state_json(const QState& s);

Json read_json_file(const std::string& path);

}  // namespace boxlab
