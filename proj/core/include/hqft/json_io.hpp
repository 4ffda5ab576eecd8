#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hqft/complex.hpp"
#include "hqft/dga.hpp"

namespace hqft {

using json = nlohmann::json;

// [num, den, num_i, den_i]; integers that do not fit in 64 bits are written as decimal strings
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);

// {"degrees":[{"n","basis"}], "differentials":[{"n","matrix"}]}
json complex_to_json(const CochainComplex& c);
CochainComplex complex_from_json(const json& j);

json map_to_json(const CochainMap& f);

// {"generators":[{"name","degree","diff":[[name, scalar]]}], "tau":[[g1, g2, scalar]], "cutoff":int}
json algebra_to_json(const PresentedDGA& A);
AlgebraPtr algebra_from_json(const json& j);  // validates
json element_to_json(const PresentedDGA& A, const NCElement& x);  // [[word, scalar]]

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& j);

}  // namespace hqft
