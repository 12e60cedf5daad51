#pragma once

#include "dqw/deformation.hpp"
#include "dqw/koszul.hpp"

#include <nlohmann/json.hpp>

namespace dqw {

using json = nlohmann::json;

json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

json to_json(const SpacePtr& sp);
SpacePtr space_from_json(const json& j);

json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j, const SpacePtr& space);

json to_json(const DiffOp& d);
DiffOp diffop_from_json(const json& j, const SpacePtr& space);

json to_json(const MultiDiffOp& phi);
MultiDiffOp multidiffop_from_json(const json& j);

json to_json(const StarProduct& S);
StarProduct star_from_json(const json& j);

json to_json(const KoszulCochain& phi);

json sp_bracket_to_json(const SemiPoissonBracket& br);
SemiPoissonBracket sp_bracket_from_json(const json& j, const StarProduct& S);

json bimodule_to_json(const BimoduleStructure& B);

} // namespace dqw
