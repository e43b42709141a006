#include "ctxembed/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "ctxembed/errors.hpp"

namespace ctxembed {

void Report::put(const std::string& key, MetricValue value) {
  if (key.empty() || key.find_first_of("= \t\n") != std::string::npos) {
    throw PreconditionError("invalid report key '" + key + "'");
  }
  if (auto* d = std::get_if<double>(&value); d && !std::isfinite(*d)) {
    throw PreconditionError("report value for '" + key + "' is not finite");
  }
  values_[key] = std::move(value);
}

std::string format_metric(const MetricValue& value) {
  if (auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  if (auto* d = std::get_if<double>(&value)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", *d);
    return buf;
  }
  return std::get<std::string>(value);
}

std::string Report::text() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + "=" + format_metric(value) + "\n";
  return out;
}

nlohmann::ordered_json Report::json(const nlohmann::ordered_json& config) const {
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (const auto& [key, value] : values_) {
    std::visit([&](const auto& v) { metrics[key] = v; }, value);
  }
  return {{"version", std::string(kVersion)}, {"metrics", metrics}, {"config", config}};
}

void Report::write(const std::filesystem::path& path, const nlohmann::ordered_json& config) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << text();
    if (!out) throw Error("cannot write " + path.string());
  }
  auto doc = json(config);
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  doc["timestamp"] = stamp;
  const std::filesystem::path json_path = path.string() + ".json";
  std::ofstream out(json_path);
  if (!out) throw Error("cannot write " + json_path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error("cannot write " + json_path.string());
}

}  // namespace ctxembed
