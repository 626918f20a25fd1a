#pragma once

#include "htrmt/recurrences.hpp"

#include "json.hpp"

namespace htrmt {

using json = nlohmann::json;

json to_json(const Rational& r);
json to_json(const MultiPoly& p);
json to_json(const Scalar& s);
json to_json(const EnsembleParams& p);
json to_json(const MomentSet& m);
json to_json(const CovTable& c);

Rational rational_from_json(const json& j);
MultiPoly multipoly_from_json(const json& j);
Scalar scalar_from_json(const json& j);
EnsembleParams params_from_json(const json& j);

} // namespace htrmt
