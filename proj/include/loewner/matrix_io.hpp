#pragma once

#include <nlohmann/json.hpp>

#include "loewner/hermitian.hpp"

namespace loewner {

// {"dim": n, "re": [[...]], "im": [[...]]}; "im" is optional on input and
// omitted on output when every imaginary part is zero.
nlohmann::json to_json(const Hermitian& a);
Hermitian hermitian_from_json(const nlohmann::json& j);

// Rectangular complex matrices (isometries, unitaries) use the same
// "re"/"im" layout with "rows"/"cols" instead of "dim".
nlohmann::json dense_to_json(const DenseMatrix& a);
DenseMatrix dense_from_json(const nlohmann::json& j);

}  // namespace loewner
