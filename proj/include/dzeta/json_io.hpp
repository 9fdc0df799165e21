#pragma once

// JSON forms of the library's values. An FqElem is an array of m*M residues,
// a matrix is a row-major array of rows.

#include "dzeta/drinfeld.hpp"
#include "dzeta/level.hpp"
#include "dzeta/zeta.hpp"
#include "json.hpp"

namespace dzeta {

using json = nlohmann::json;

json to_json(const FqElem& x);
FqElem fq_from_json(const FieldTower& K, const json& j);

json to_json(const FieldTower& K);
json to_json(const Matrix& m);
Matrix matrix_from_json(const FieldTower& K, const json& j);
json to_json(const MatPoly& a);
json to_json(const OrePoly& f);
json to_json(const DivisorSpec& div);
json to_json(const DrinfeldModule& dm);
json to_json(const TorsionData& td);
json to_json(const LevelData& L);
LevelData level_from_json(const FieldTower& K, const json& j);
json to_json(const GroupElement& g);
json to_json(const TransferResult& t);
json to_json(const CompanionPair& cp);
/// Members only unless all is set.
json to_json(const Census& c, const GroupEnumerator& G, bool all);

}  // namespace dzeta
