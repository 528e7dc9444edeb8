#pragma once

// JSON forms of complexes, equivariant models and barcodes. Rationals travel
// as "num/den" strings; matrices as [row_id, col_id, value] triplets.

#include "smith/complex.hpp"
#include "smith/persistence.hpp"
#include "smith/spectral.hpp"

#include <json.hpp>

#include <string>

namespace smith::io {

using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become MalformedInput("source:line:col: ...").
Json parse_json(const std::string& text, const std::string& source);
/// Throws MalformedInput when the file cannot be read.
std::string read_file(const std::string& path);

/// { "p", "generators": [{"id", "degree", "action"}], "d": triplets,
///   "sigma": triplets (optional, identity when absent) }
EquivariantComplex complex_from_json(const Json& j);
Json complex_to_json(const EquivariantComplex& c);

/// The complex format plus "i_max" (required) and
/// "d_terms": [{"i", "alpha", "matrix": triplets}].
EquivariantFloerModel model_from_json(const Json& j);
Json model_to_json(const EquivariantFloerModel& m);

/// { "p", "bars": [{"start", "end" (null when infinite), "mult"}] }
Barcode barcode_from_json(const Json& j);
Json barcode_to_json(const Barcode& b);

/// { "lower", "upper" }, null for an infinite end.
ActionWindow window_from_json(const Json& j, const std::string& field);
Json window_to_json(const ActionWindow& w);
Json tate_dims_to_json(const TateDims& d);
Json degree_map_to_json(const std::map<int, std::size_t>& dims);

}  // namespace smith::io
