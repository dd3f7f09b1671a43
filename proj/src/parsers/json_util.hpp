#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "sfmio/error.hpp"
#include "sfmio/text_util.hpp"

namespace sfmio::detail {

using nlohmann::json;

inline const json& require_key(const json& j, const char* key, const char* where) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string(where) + ": missing required key '" + key + "'");
  return *it;
}

/// Numeric value that may be serialized as a JSON number or as a string
/// (Meshroom stores all numerics as strings).
inline double as_number(const json& j, const char* where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    if (const auto v = parse_double(j.get_ref<const std::string&>())) return *v;
    throw ParseError(std::string(where) + ": unparseable numeric string '" +
                     j.get<std::string>() + "'");
  }
  throw ParseError(std::string(where) + ": expected a number");
}

inline std::int64_t as_integer(const json& j, const char* where) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return static_cast<std::int64_t>(j.get<double>());
  if (j.is_string()) {
    if (const auto v = parse_int(j.get_ref<const std::string&>())) return *v;
    throw ParseError(std::string(where) + ": unparseable integer string '" +
                     j.get<std::string>() + "'");
  }
  throw ParseError(std::string(where) + ": expected an integer");
}

inline json parse_json_stream(std::istream& in, const char* what) {
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded())
    throw ParseError(std::string(what) + ": malformed JSON document");
  return doc;
}

}  // namespace sfmio::detail
