#include "rgs/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <sstream>

namespace rgs {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunManifest::RunManifest(std::string command, const std::string& input_bytes, nlohmann::json config)
    : command_(std::move(command)), input_hash_(fnv1a_hex(input_bytes)), config_(std::move(config)),
      t0_(std::chrono::steady_clock::now()) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  started_ = buf;
}

void RunManifest::finish() { wall_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

nlohmann::json RunManifest::to_json() const {
  return {{"command", command_},
          {"input_hash", "fnv1a64:" + input_hash_},
          {"config", config_},
          {"version", kVersion},
          {"timestamp", {{"started", started_}, {"wall_time_s", wall_}}}};
}

std::string RunManifest::csv_header() const {
  std::ostringstream os;
  os << "# command: " << command_ << '\n'
     << "# input_hash: fnv1a64:" << input_hash_ << '\n'
     << "# config: " << config_.dump() << '\n'
     << "# version: " << kVersion << '\n'
     << "# timestamp: " << started_ << " wall_time_s=" << wall_ << '\n';
  return os.str();
}

}  // namespace rgs
