#include "fracmorrey/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace fracmorrey {

std::string toString(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Warn:
      return "warn";
    case Verdict::Fail:
      return "fail";
  }
  return "fail";
}

void CheckReport::addSample(double lhs, double rhs, nlohmann::json coords, std::string note) {
  CheckSample s;
  s.lhs = lhs;
  s.rhs = rhs;
  s.ratio = rhs > 0.0 && std::isfinite(rhs) ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
  s.coords = std::move(coords);
  s.note = std::move(note);
  samples.push_back(std::move(s));
}

void CheckReport::fail(const std::string& reason) {
  failures.push_back(reason);
  notes.push_back("fail: " + reason);
}

void CheckReport::warn(const std::string& reason) {
  warnings.push_back(reason);
  notes.push_back("warn: " + reason);
}

bool CheckReport::hasNote(const std::string& text) const {
  return std::find(notes.begin(), notes.end(), text) != notes.end();
}

bool CheckReport::vacuous() const {
  return std::none_of(samples.begin(), samples.end(), [](const CheckSample& s) { return s.ratio > 0.0; });
}

void finalizeReport(CheckReport& report, const FinalizePolicy& policy) {
  std::vector<double> positive;
  double fitted = 0.0;
  for (const CheckSample& s : report.samples) {
    if (std::isnan(s.ratio)) {
      if (s.lhs > 0.0) {
        report.fail("LHS " + std::to_string(s.lhs) + " > 0 where the RHS vanishes");
      }
      continue;
    }
    fitted = std::max(fitted, s.ratio);
    if (s.ratio > 0.0) positive.push_back(s.ratio);
  }

  if (positive.empty()) {
    report.fittedConstant = 0.0;
    report.stabilityRatio = 0.0;
    if (!report.hasNote("vacuous")) report.note("vacuous");
  } else {
    std::vector<double> sorted = positive;
    if (!policy.groupBy.empty()) {
      std::map<std::string, double> envelope;
      for (const CheckSample& s : report.samples) {
        if (!(s.ratio > 0.0)) continue;
        double& v = envelope[s.coords.value(policy.groupBy, nlohmann::json()).dump()];
        v = std::max(v, s.ratio);
      }
      sorted.clear();
      for (const auto& [key, v] : envelope) sorted.push_back(v);
    }
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    report.fittedConstant = fitted;
    report.stabilityRatio = fitted / median;
    if (!std::isfinite(fitted)) report.fail("fitted constant is not finite");
    if (report.stabilityRatio > policy.stabilityCeiling) {
      report.fail("stability ratio " + std::to_string(report.stabilityRatio) + " exceeds ceiling " +
                  std::to_string(policy.stabilityCeiling));
    }
    if (policy.maxFitted && fitted > *policy.maxFitted) {
      report.fail("fitted constant " + std::to_string(fitted) + " exceeds bound " + std::to_string(*policy.maxFitted));
    }
  }

  if (!report.failures.empty()) {
    report.verdict = Verdict::Fail;
  } else if (!report.warnings.empty()) {
    report.verdict = Verdict::Warn;
  } else {
    report.verdict = Verdict::Pass;
  }
}

nlohmann::json CheckReport::toJson() const {
  nlohmann::json samplesJson = nlohmann::json::array();
  for (const CheckSample& s : samples) {
    nlohmann::json j{{"lhs", s.lhs}, {"rhs", s.rhs}, {"coords", s.coords}};
    j["ratio"] = std::isfinite(s.ratio) ? nlohmann::json(s.ratio) : nlohmann::json(nullptr);
    if (!s.note.empty()) j["note"] = s.note;
    samplesJson.push_back(std::move(j));
  }
  return {
      {"schemaVersion", kReportSchemaVersion},
      {"check", checkName},
      {"parameters", parameters},
      {"samples", samplesJson},
      {"fittedConstant", fittedConstant},
      {"stabilityRatio", stabilityRatio},
      {"verdict", toString(verdict)},
      {"notes", notes},
      {"diagnostics", diagnostics},
  };
}

}  // namespace fracmorrey
