#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lscont/model.hpp"
#include "lscont/transforms.hpp"

namespace lscont {

enum class CheckStatus { pass, fail, skipped };
const char* to_string(CheckStatus s);

struct CheckEntry {
  std::string check_id;
  std::string anchor;  // the statement being checked, quoted
  CheckStatus status = CheckStatus::skipped;
  double metric = 0.0;
  double tolerance = 0.0;
  double runtime = 0.0;  // seconds
  std::string note;
};

struct VerificationReport {
  std::vector<CheckEntry> entries;  // sorted by check_id
  std::uint64_t seed = 0;
  std::string suite;
  PhysicalConfig config;

  bool passed() const;  // no entry failed
  int count(CheckStatus s) const;
  const CheckEntry* find(const std::string& id) const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240501;

/// Suite names accepted by run_all, besides "all".
const std::vector<std::string>& suite_names();

/// Runs the selected suite ("all" for every one) for cfg. Suites run
/// concurrently; a failing or throwing check becomes a `fail` entry and the
/// rest still run. Throws invalid_argument for an unknown suite name.
VerificationReport run_all(const PhysicalConfig& cfg, const std::string& suite = "all",
                           std::uint64_t seed = kDefaultSeed, const QuadratureSpec& quad = {});

/// JSON array of entry records (check_id, paper_anchor, status, metric,
/// tolerance, runtime, note). Non-finite metrics are written as null.
std::string report_json(const VerificationReport& report);

}  // namespace lscont
