#pragma once

// JSON and text serialization for specs, reports and verification records.
// Output objects keep insertion order so bytes are stable for fixed input.

#include <string>

#include <json.hpp>

#include "coamoeba/cubical.hpp"
#include "coamoeba/homology.hpp"
#include "coamoeba/model.hpp"

namespace coamoeba {

using Json = nlohmann::ordered_json;

/// {"n": int, "terms": [{"exponent": [int...], "coefficient": "p/q"}...]}.
/// Coefficients may also be JSON numbers. Throws InvalidInput.
PolynomialSpec spec_from_json(const nlohmann::json& j);
Json spec_to_json(const PolynomialSpec& spec);

/// Square integer matrix as an array of rows.
IntMatrix matrix_from_json(const nlohmann::json& j);
Json matrix_to_json(const IntMatrix& m);
/// Machine-sized integers become numbers, larger ones decimal strings.
Json integer_to_json(const Integer& x);

Json snf_to_json(const SmithDecomposition& s);
Json report_to_json(const AnalysisReport& r);
Json verification_to_json(const VerificationRecord& r, bool include_timings);

std::string report_to_text(const AnalysisReport& r);

} // namespace coamoeba
