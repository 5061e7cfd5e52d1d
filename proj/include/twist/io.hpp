#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "twist/crossed.hpp"
#include "twist/fell.hpp"

// JSON document format for every structure in the library, with a canonical
// byte form: object keys sorted, matrices row-major with complex entries as
// [re, im] pairs, groups as Cayley tables.  parse(serialize(x)) returns x
// bit-exactly: integers and labels verbatim, matrix entries through the
// shortest-round-trip double printer.

namespace twist {

using Json = nlohmann::json;

// Every kind of document the workbench understands. The discriminator
// string stored in the file is given by kind_of.
using SpecObject =
    std::variant<FiniteGroup, CrossedModule, MatAlg, BSAction, CorrAction,
                 CMAction, FellBundle, Transformation, Modification,
                 FellCorrespondence, FellRepresentation>;

std::string kind_of(const SpecObject& obj);

// Component serialisers, exposed for tests and the corpus generator.
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);
Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);
Json algebra_to_json(const MatAlg& a);
MatAlg algebra_from_json(const Json& j);
Json elem_to_json(const AlgElement& x);
AlgElement elem_from_json(const Json& j, const MatAlg& a);

// Full document with the "kind" discriminator, canonical layout.
Json serialize(const SpecObject& obj);
// Throws ParseError with a JSON-path diagnostic on schema violations.
SpecObject parse_spec(const Json& j);

// Canonical byte form: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);

// Parse raw text; syntax errors are reported with line and column.
Json parse_text(const std::string& text);

SpecObject load_spec_file(const std::string& path);
void save_spec_file(const std::string& path, const SpecObject& obj);

// Dispatches to the verifier matching the document kind.
VerificationReport verify_object(const SpecObject& obj, Tolerance tol = {});

// Report rendering. Timing is excluded by default so that identical inputs
// produce byte-identical reports.
Json report_to_json(const VerificationReport& r, bool include_timing = false);
std::string report_to_text(const VerificationReport& r,
                           bool include_timing = false);

}  // namespace twist
