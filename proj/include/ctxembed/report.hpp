#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "json.hpp"

namespace ctxembed {

inline constexpr std::string_view kVersion = "0.1.0";

using MetricValue = std::variant<std::int64_t, double, std::string>;

/// Flat metric map rendered as sorted `key=value` lines; reals with six
/// decimals.
class Report {
 public:
  /// Throws PreconditionError for non-finite reals or keys containing '='
  /// or whitespace.
  void put(const std::string& key, MetricValue value);

  template <typename T>
  void set(const std::string& key, const T& value) {
    if constexpr (std::is_integral_v<T>) {
      put(key, static_cast<std::int64_t>(value));
    } else if constexpr (std::is_floating_point_v<T>) {
      put(key, static_cast<double>(value));
    } else {
      put(key, std::string(value));
    }
  }

  bool contains(const std::string& key) const { return values_.count(key) > 0; }
  const MetricValue& at(const std::string& key) const { return values_.at(key); }
  const std::map<std::string, MetricValue>& values() const { return values_; }

  std::string text() const;
  nlohmann::ordered_json json(const nlohmann::ordered_json& config) const;

  /// Writes `path` (text) and `path`.json with metrics, config, version and a
  /// timestamp. Throws Error when the files cannot be written.
  void write(const std::filesystem::path& path, const nlohmann::ordered_json& config) const;

 private:
  std::map<std::string, MetricValue> values_;
};

std::string format_metric(const MetricValue& value);

}  // namespace ctxembed
