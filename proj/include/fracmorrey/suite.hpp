#pragma once

// Config-driven suites of checks. A suite document is YAML:
//
//   suite:
//     out: reports        # output directory
//     threads: 2
//     seed: 7             # only used when jitter is on
//     jitter: false
//   checks:
//     - name: campanato-log
//       check: checkCampanatoB
//       b: log
//       p: 1
//       lambda: 0
//
// Every check has documented parameters with defaults (see describeCheck);
// the report embeds the fully resolved parameter set.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracmorrey/report.hpp"

namespace fracmorrey {

struct SuiteSettings {
  std::string out = "reports";
  int threads = 1;
  std::uint64_t seed = 0;
  /// Perturb sample points by a seeded offset of size jitterAmplitude.
  bool jitter = false;
  double jitterAmplitude = 1e-3;
};

struct CheckInvocation {
  /// Unique name; also the report file stem.
  std::string name;
  /// Registered check, e.g. "checkCampanatoB".
  std::string check;
  /// Parameters with every default filled in.
  nlohmann::json params;
  /// 1-based line of the entry in the config document, 0 if unknown.
  int line = 0;
};

struct SuiteConfig {
  SuiteSettings settings;
  std::vector<CheckInvocation> checks;
  /// Non-fatal diagnostics from parsing (an empty document, for one).
  std::vector<std::string> warnings;
};

/// Parses and fully validates a suite document: check names, catalog ids,
/// grids and exponent couplings. Throws ConfigError with line/field context.
SuiteConfig parseConfig(const std::string& text);
SuiteConfig loadConfig(const std::filesystem::path& path);

/// The suite exercised by `fracmorrey run` examples and the determinism tests.
std::string defaultSuiteDocument();

struct SuiteResult {
  std::string name;
  std::string check;
  CheckReport report;
  /// Non-empty when the check threw instead of producing a report.
  std::string error;
};

struct SuiteOutcome {
  std::vector<SuiteResult> results;
  int exitCode = 0;
};

/// Runs one invocation; throws on execution errors.
CheckReport runCheck(const CheckInvocation& invocation, const SuiteSettings& settings);

/// Runs every check (in parallel when settings.threads > 1) and writes
/// <out>/<name>.json, summary.csv, suite.log and metadata.json. Reports and
/// the summary are byte-identical across runs; only metadata.json carries a
/// timestamp. Throws std::filesystem::filesystem_error or Error on I/O failure.
SuiteOutcome runSuite(const SuiteConfig& config, std::ostream* log = nullptr);

/// 0 if no verdict is fail, 1 otherwise; 2 is reserved for execution errors.
int exitCodeFor(const std::vector<SuiteResult>& results);

std::string summaryCsv(const std::vector<SuiteResult>& results);

struct CheckDescription {
  std::string name;
  std::string summary;
  nlohmann::json defaults;
};

std::vector<CheckDescription> registeredChecks();
/// Throws ConfigError for an unknown name.
CheckDescription describeCheck(const std::string& name);

}  // namespace fracmorrey
