#pragma once

#include <string>

#include <json.hpp>

namespace gapratio::io {

using Json = nlohmann::ordered_json;

/// Pretty-printed JSON with every double written as %.17g, so values
/// round-trip exactly. Non-finite doubles become null.
std::string to_json_text(const Json& value);

}  // namespace gapratio::io
