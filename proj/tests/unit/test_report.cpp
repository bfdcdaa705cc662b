#include <cmath>
#include <limits>

#include "doctest.h"
#include "fracmorrey/report.hpp"

using namespace fracmorrey;

TEST_CASE("fitted constant and stability") {
  CheckReport r;
  r.checkName = "demo";
  r.addSample(1.0, 2.0);
  r.addSample(3.0, 2.0);
  r.addSample(2.0, 2.0);
  finalizeReport(r);
  CHECK(r.fittedConstant == 1.5);
  CHECK(r.stabilityRatio == 1.5);
  CHECK((r.verdict == Verdict::Pass));

  FinalizePolicy tight;
  tight.stabilityCeiling = 1.2;
  CheckReport s = r;
  s.failures.clear();
  finalizeReport(s, tight);
  CHECK((s.verdict == Verdict::Fail));

  FinalizePolicy bounded;
  bounded.maxFitted = 1.4;
  CheckReport b = r;
  finalizeReport(b, bounded);
  CHECK((b.verdict == Verdict::Fail));
}

TEST_CASE("even sample counts use the mean of the middle pair") {
  CheckReport r;
  for (double v : {1.0, 2.0, 4.0, 8.0}) r.addSample(v, 1.0);
  finalizeReport(r, {100.0, {}, {}});
  CHECK(r.stabilityRatio == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("grouped envelopes") {
  // within each r1 the ratio decays in r2; the envelope over r1 is flat
  CheckReport r;
  for (double r1 : {1.0, 2.0, 3.0}) {
    for (double k : {1.0, 10.0, 100.0}) r.addSample(1.0 / k, 1.0, {{"r1", r1}, {"r2", r1 * k}});
  }
  CheckReport plain = r;
  finalizeReport(plain, {3.0, {}, {}});
  CHECK((plain.verdict == Verdict::Fail));
  CHECK(plain.stabilityRatio == doctest::Approx(10.0));
  finalizeReport(r, {3.0, {}, "r1"});
  CHECK((r.verdict == Verdict::Pass));
  CHECK(r.stabilityRatio == 1.0);
  CHECK(r.fittedConstant == 1.0);
}

TEST_CASE("degenerate samples") {
  CheckReport zero;
  zero.addSample(0.0, 0.0);
  zero.addSample(0.0, 1.0);
  finalizeReport(zero);
  CHECK(zero.vacuous());
  CHECK(zero.hasNote("vacuous"));
  CHECK((zero.verdict == Verdict::Pass));
  CHECK(zero.fittedConstant == 0.0);

  CheckReport broken;
  broken.addSample(1.0, 0.0);
  broken.addSample(1.0, 1.0);
  finalizeReport(broken);
  CHECK((broken.verdict == Verdict::Fail));

  CheckReport inf;
  inf.addSample(1.0, std::numeric_limits<double>::infinity());
  CHECK(std::isnan(inf.samples[0].ratio));
}

TEST_CASE("warnings and failures") {
  CheckReport r;
  r.addSample(1.0, 1.0);
  r.warn("soft");
  finalizeReport(r);
  CHECK((r.verdict == Verdict::Warn));
  CHECK(r.hasNote("warn: soft"));
  r.fail("hard");
  finalizeReport(r);
  CHECK((r.verdict == Verdict::Fail));
  CHECK(toString(Verdict::Warn) == "warn");
}

TEST_CASE("json layout") {
  CheckReport r;
  r.checkName = "demo";
  r.parameters["p"] = 2.0;
  r.addSample(1.0, 2.0, {{"r", 0.5}}, "note");
  r.addSample(1.0, 0.0);
  r.diagnostics["extra"] = 1;
  finalizeReport(r);
  const nlohmann::json j = r.toJson();
  CHECK(j["schemaVersion"] == kReportSchemaVersion);
  CHECK(j["check"] == "demo");
  CHECK(j["samples"].size() == 2);
  CHECK(j["samples"][0]["ratio"] == 0.5);
  CHECK(j["samples"][0]["coords"]["r"] == 0.5);
  CHECK(j["samples"][0]["note"] == "note");
  CHECK(j["samples"][1]["ratio"].is_null());
  CHECK(j["verdict"] == "fail");
  CHECK(j["diagnostics"]["extra"] == 1);
  CHECK(j["parameters"]["p"] == 2.0);
}
