#pragma once

#include <json.hpp>

#include "admissible_series.hpp"
#include "brieskorn.hpp"
#include "invariant_series.hpp"
#include "plumbing.hpp"
#include "qseries.hpp"
#include "spin_c.hpp"

namespace plumbtop {

using Json = nlohmann::ordered_json;

Json tree_to_json(const PlumbingTree& t);
PlumbingTree tree_from_json(const Json& j);

Json move_to_json(const MoveSpec& mv);
MoveSpec move_from_json(const Json& j);

Json rat_vec_to_json(const std::vector<Rat>& v);
Json int_vec_to_json(const IntVec& v);
IntVec int_vec_from_json(const Json& j);

Json series_to_json(const AdmissibleSeries& p);
AdmissibleSeries series_from_json(const LatticePtr& lat, const Json& j);
// Accepts the literal name "W", a family shorthand, or a JSON file body.
AdmissibleSeries series_from_spec(const LatticePtr& lat, const std::string& text);

Json window_to_json(const CoefficientWindow& w);
CoefficientWindow window_from_json(const LatticePtr& lat, const Json& j);

Json qseries_to_json(const QSeries& s);

Json spinc_to_json(const SpincRep& a);
SpincRep spinc_from_json(const Json& j);

Json report_to_json(const AdmissibilityReport& r);
Json report_to_json(const InvarianceReport& r);

}  // namespace plumbtop
