#pragma once

// Report envelope shared by every command: tool version, input digests, provenance, timings.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#include "goelab/json_io.hpp"

namespace goelab {

inline constexpr const char* kToolName = "goe_lab";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "goe_lab.report/1";

enum class Provenance { decided, certified_to_radius, unknown };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::decided: return "decided";
    case Provenance::certified_to_radius: return "certified-to-radius";
    case Provenance::unknown: return "unknown";
  }
  return "unknown";
}

// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string digest_of(const Json& j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

inline Json input_entry(const std::string& role, const Json& canonical) {
  return Json{{"role", role}, {"digest", digest_of(canonical)}};
}

inline Json report_header(const std::string& command) {
  return Json{{"schema", kReportSchema}, {"tool", kToolName}, {"version", kToolVersion}, {"command", command},
              {"inputs", Json::array()}};
}

inline Json budget_json(std::size_t max_cells, std::uint64_t max_candidates) {
  return Json{{"max_cells", max_cells}, {"max_candidates", max_candidates}};
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace goelab
