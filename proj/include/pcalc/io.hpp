#pragma once

#include <json.hpp>
#include <string>

#include "pcalc/deform.hpp"
#include "pcalc/rigidity.hpp"

namespace pcalc {

using Json = nlohmann::json;

/// Two-space indented dump followed by a newline.
std::string canonical_dump(const Json& doc);
/// Throws ParseError on malformed JSON.
Json parse_json(const std::string& text);

Json to_json(const Multivector& a);
Json to_json(const DifferentialForm& w);
/// Multivector document plus the `integrable` field.
Json to_json(const PoissonStructure& pi);
Json to_json(const DiagonalSpec& spec);
Json to_json(const DeformationFamily& family);
Json to_json(const TrackResult& r, const TrackOptions& o);

/// Value of the `kind` field (`multivector`, `form`, `diagonal`, `family`);
/// diagonal and family documents are also recognised by their fields.
std::string document_kind(const Json& doc);

Multivector multivector_from_json(const Json& doc);
DifferentialForm form_from_json(const Json& doc);
/// A claimed `integrable` value is re-checked; a contradiction is a ParseError.
PoissonStructure poisson_from_json(const Json& doc);
/// Parameters default to the identifiers used in the values, in order of
/// first use; coordinates default to x1..xn.
DiagonalSpec diagonal_from_json(const Json& doc);
DeformationFamily family_from_json(const Json& doc);

}  // namespace pcalc
