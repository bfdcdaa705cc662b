#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fracmorrey {

enum class Verdict { Pass, Warn, Fail };

std::string toString(Verdict v);

struct CheckSample {
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs; NaN when the sample is unusable (rhs <= 0)
  double ratio = 0.0;
  nlohmann::json coords = nlohmann::json::object();
  std::string note;
};

/// Outcome of one inequality or admissibility check.
struct CheckReport {
  std::string checkName;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<CheckSample> samples;
  double fittedConstant = 0.0;
  double stabilityRatio = 0.0;
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> notes;
  nlohmann::json diagnostics = nlohmann::json::object();

  void addSample(double lhs, double rhs, nlohmann::json coords = nlohmann::json::object(), std::string note = {});
  /// Forces verdict fail at finalization.
  void fail(const std::string& reason);
  /// Downgrades pass to warn at finalization.
  void warn(const std::string& reason);
  void note(const std::string& text) { notes.push_back(text); }

  bool hasNote(const std::string& text) const;
  /// No sample with a positive ratio.
  bool vacuous() const;

  nlohmann::json toJson() const;

  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

struct FinalizePolicy {
  /// Upper bound on max/median of the positive ratios; infinity disables it.
  double stabilityCeiling = 3.0;
  /// Optional bound on the fitted constant itself.
  std::optional<double> maxFitted;
  /// When set, stabilityRatio uses the per-group maxima of the ratios, grouping
  /// samples by this coords field (for pair families where the ratio is
  /// expected to decay along the second coordinate).
  std::string groupBy;
};

/// Computes fittedConstant and stabilityRatio from the samples and sets the verdict.
void finalizeReport(CheckReport& report, const FinalizePolicy& policy = {});

inline constexpr int kReportSchemaVersion = 1;

}  // namespace fracmorrey
