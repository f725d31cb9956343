#pragma once

#include <string>

#include "json.hpp"
#include "trimcache/error.hpp"
#include "trimcache/library.hpp"
#include "trimcache/placement.hpp"
#include "trimcache/radio.hpp"

namespace trimcache::detail {

using nlohmann::json;

inline const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path + "." + key + ": missing");
  return *it;
}

template <typename T>
T as(const json& value, const std::string& path) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ValidationError(path + ": wrong type (" + std::string(value.type_name()) + ")");
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& path) {
  return as<T>(field(obj, key, path), path + "." + key);
}

template <typename T>
T get_or(const json& obj, const char* key, const std::string& path, T fallback) {
  if (!obj.is_object()) throw ValidationError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return as<T>(*it, path + "." + key);
}

json library_to_json_value(const ModelLibrary& library);
ModelLibrary library_from_json_value(const json& j, const std::string& path);
RadioParams radio_from_json_value(const json& j, const std::string& path);

}  // namespace trimcache::detail
