#pragma once

#include <filesystem>

#include <json.hpp>

#include "morrey/core_types.hpp"

namespace morrey {

using Json = nlohmann::ordered_json;

// {"d": <int>, "entries": [{"k": [..], "v": "<num/den or decimal>"}, ...]}
// Exact entries are written as "num/den", float entries as round-trip decimals.
Json sequence_to_json(const Sequence& x);

// Rationals and integers are always accepted; decimal strings only with
// DecimalPolicy::kAllow, in which case they become double entries.
Sequence sequence_from_json(const Json& doc, DecimalPolicy decimals);

Json norm_value_to_json(const NormValue& v);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace morrey
