#include "morrey/json_io.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <system_error>

namespace morrey {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("failed to format double");
  return std::string(buf, end);
}

namespace {

Scalar parse_entry_value(const std::string& text, DecimalPolicy decimals) {
  const bool looks_decimal = text.find('/') == std::string::npos && text.find_first_of(".eE") != std::string::npos;
  if (!looks_decimal) return Scalar(parse_rational(text, DecimalPolicy::kReject));
  if (decimals == DecimalPolicy::kReject) throw ValidationError("decimal entry '" + text + "' requires float mode");
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ValidationError("malformed decimal entry '" + text + "'");
  return Scalar(value);
}

}  // namespace

Json sequence_to_json(const Sequence& x) {
  Json entries = Json::array();
  for (const auto& [k, v] : x.entries()) {
    Json coords = Json::array();
    for (auto c : k.coords()) coords.push_back(c);
    entries.push_back({{"k", coords}, {"v", v.is_exact() ? to_fraction_string(v.exact()) : format_double(v.approx())}});
  }
  return Json{{"d", x.dim()}, {"entries", entries}};
}

Sequence sequence_from_json(const Json& doc, DecimalPolicy decimals) {
  if (!doc.is_object()) throw ValidationError("sequence document must be a JSON object");
  if (!doc.contains("d") || !doc["d"].is_number_integer()) throw ValidationError("sequence needs integer field 'd'");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw ValidationError("sequence needs array 'entries'");
  const auto d64 = doc["d"].get<std::int64_t>();
  if (d64 < 1 || d64 > 16) throw ValidationError("sequence dimension d must lie in [1, 16]");
  const int d = static_cast<int>(d64);

  std::vector<std::pair<LatticePoint, Scalar>> pairs;
  pairs.reserve(doc["entries"].size());
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("k") || !e.contains("v")) throw ValidationError("entry needs fields 'k' and 'v'");
    if (!e["k"].is_array()) throw ValidationError("entry 'k' must be an array");
    if (!e["v"].is_string()) throw ValidationError("entry 'v' must be a string");
    std::vector<std::int64_t> coords;
    for (const auto& c : e["k"]) {
      if (!c.is_number_integer()) throw ValidationError("lattice coordinates must be integers");
      coords.push_back(c.get<std::int64_t>());
    }
    pairs.emplace_back(LatticePoint(std::move(coords)), parse_entry_value(e["v"].get<std::string>(), decimals));
  }
  return sequence_from_entries(d, pairs);
}

Json norm_value_to_json(const NormValue& v) {
  Json m = Json::array();
  for (auto c : v.argmax.m.coords()) m.push_back(c);
  Json exact = nullptr;
  if (v.exact) {
    exact = Json{{"S", v.exact->cardinality.str()},
                 {"T", to_fraction_string(v.exact->psum)},
                 {"p", v.exact->p},
                 {"q", v.exact->q}};
  }
  return Json{{"value_float", v.float_value}, {"exact", exact}, {"argmax", {{"m", m}, {"N", v.argmax.N}}}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace morrey
