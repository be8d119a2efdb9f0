#pragma once

#include <string>

#include "json.hpp"

#include "finrank/weights.hpp"

namespace finrank {

// Insertion-ordered documents keep report and spec field order stable, which
// the byte-identical-output guarantee of the CLI relies on.
using Json = nlohmann::ordered_json;

Json complex_to_json(Complex c);  // [re, im]
Complex complex_from_json(const Json& j);

Json weight_to_json(const Weight& W);
Weight weight_from_json(const Json& j);

std::string serialize_weight(const Weight& W);
Weight parse_weight(const std::string& text);

}  // namespace finrank
