#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include <json.hpp>

namespace rgs {

inline constexpr const char* kVersion = "0.1.0";

// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

class RunManifest {
 public:
  RunManifest(std::string command, const std::string& input_bytes, nlohmann::json config);

  // Stamps the wall time since construction.
  void finish();
  nlohmann::json to_json() const;
  // "# key: value" lines for CSV output.
  std::string csv_header() const;

 private:
  std::string command_, input_hash_, started_;
  nlohmann::json config_;
  std::chrono::steady_clock::time_point t0_;
  double wall_ = 0.0;
};

}  // namespace rgs
