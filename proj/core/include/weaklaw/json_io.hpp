// JSON encoding and decoding of values, carriers, functions, and relations.
// Encoders emit canonical (sorted) children, so serialization is stable.
#pragma once

// The vendored single-header json library defines nlohmann::ordered_json,
// which preserves insertion order; all report output uses it so repeated runs
// are byte-identical.
#include <json.hpp>

#include "weaklaw/finset.hpp"

namespace weaklaw {

using Json = nlohmann::ordered_json;

Json value_to_json(Val v);
Val value_from_json(const Json& j);  // ParseError on malformed input

Json carrier_to_json(const Cp& x);
Cp carrier_from_json(const Json& j);

Json finfn_to_json(const FinFn& f);
FinFn finfn_from_json(const Json& j);

Json finrel_to_json(const FinRel& r);
FinRel finrel_from_json(const Json& j);

std::string dump_json(const Json& j);  // 2-space indent, trailing newline

}  // namespace weaklaw
