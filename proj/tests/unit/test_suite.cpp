#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "doctest.h"
#include "fracmorrey/errors.hpp"
#include "fracmorrey/suite.hpp"

using namespace fracmorrey;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("fracmorrey-suite-" + std::to_string(::getpid()) + "-" + tag);
  fs::remove_all(dir);
  return dir;
}

int configErrorLine(const std::string& text) {
  try {
    parseConfig(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string configErrorField(const std::string& text) {
  try {
    parseConfig(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("the shipped default config is the built-in default document") {
  CHECK(slurp(fs::path(FRACMORREY_SOURCE_DIR) / "configs" / "default.yaml") == defaultSuiteDocument());
  const SuiteConfig c = parseConfig(defaultSuiteDocument());
  CHECK(c.checks.size() >= 10);
  CHECK(c.warnings.empty());
}

TEST_CASE("parsing fills defaults and keeps overrides") {
  const SuiteConfig c = parseConfig(slurp(fs::path(FRACMORREY_TEST_DATA) / "three_pass.yaml"));
  REQUIRE(c.checks.size() == 3);
  CHECK(c.checks[0].name == "campanato-log");
  CHECK(c.checks[0].check == "checkCampanatoB");
  CHECK(c.checks[0].params["b"] == "log");
  CHECK(c.checks[0].params["p"] == 1);
  CHECK(c.checks[0].line == 2);
  CHECK(c.checks[1].params.contains("points"));
  CHECK(c.checks[1].params["points"].size() == 4);
  CHECK(c.settings.out == "reports");

  const SuiteConfig unnamed = parseConfig(slurp(fs::path(FRACMORREY_TEST_DATA) / "minimal.yaml"));
  CHECK(unnamed.checks.at(0).name == "checkCampanatoB-1");

  const SuiteConfig settings = parseConfig("suite:\n  out: x\n  threads: 3\n  seed: 9\n  jitter: true\nchecks: []\n");
  CHECK(settings.settings.out == "x");
  CHECK(settings.settings.threads == 3);
  CHECK(settings.settings.seed == 9);
  CHECK(settings.settings.jitter);
  CHECK(settings.warnings.size() == 1);

  // exponents written as fractions
  const SuiteConfig frac = parseConfig(
      "checks:\n  - check: checkPhiPairCondition\n    exponents: {s: 8, p: 2, pi: ['10/3'], lambdas: [0], "
      "regime: sPrimeLeq}\n    alpha: 0.2\n");
  CHECK(frac.checks.size() == 1);
}

TEST_CASE("configuration errors carry line and field") {
  CHECK(configErrorLine("checks:\n  - name: a\n    check: checkNope\n") == 3);
  CHECK(configErrorField("checks:\n  - name: a\n    check: checkCampanatoB\n    bogus: 1\n") == "bogus");
  CHECK(configErrorLine("checks:\n  - name: a\n    check: checkCampanatoB\n    bogus: 1\n") == 4);
  CHECK(configErrorField("checks:\n  - name: a\n    check: checkCampanatoB\n  - name: a\n    check: checkCampanatoB\n") ==
        "name");
  CHECK(configErrorField("checks:\n  - name: a\n    check: checkCampanatoB\n    b: nosuchsymbol\n") == "b");
  CHECK(configErrorField("checks:\n  - check: checkCampanatoB\n    radii: {rMin: 1, rMax: 0.1, count: 5}\n") ==
        "radii");
  CHECK(configErrorField("suite:\n  threads: 0\n") == "suite.threads");
  CHECK(configErrorField("suite:\n  colour: red\n") == "suite.colour");
  CHECK(configErrorField("extra: 1\n") == "extra");
  CHECK(configErrorLine("checks: [\n") > 0);
  CHECK(configErrorField("checks:\n  - name: ../up\n    check: checkCampanatoB\n") == "name");
  CHECK_THROWS_AS(parseConfig(slurp(fs::path(FRACMORREY_TEST_DATA) / "bad_coupling.yaml")), ConfigError);
  CHECK_THROWS_AS(loadConfig("/nonexistent/suite.yaml"), ConfigError);
}

TEST_CASE("check descriptions") {
  const auto all = registeredChecks();
  CHECK(all.size() == 13);
  for (const CheckDescription& d : all) {
    CAPTURE(d.name);
    CHECK_FALSE(d.summary.empty());
    CHECK(d.defaults.is_object());
  }
  CHECK(describeCheck("checkCampanatoB").defaults.contains("b"));
  CHECK_THROWS_AS(describeCheck("checkMissing"), ConfigError);
}

TEST_CASE("running a suite writes reports, a summary and a log") {
  SuiteConfig c = parseConfig(slurp(fs::path(FRACMORREY_TEST_DATA) / "three_pass.yaml"));
  const fs::path out = scratch("run");
  c.settings.out = out.string();
  c.settings.threads = 2;
  const SuiteOutcome o = runSuite(c);
  CHECK(o.exitCode == 0);
  REQUIRE(o.results.size() == 3);
  for (const SuiteResult& r : o.results) {
    CAPTURE(r.name);
    CHECK(r.error.empty());
    CHECK(fs::exists(out / (r.name + ".json")));
    const auto j = nlohmann::json::parse(slurp(out / (r.name + ".json")));
    CHECK(j["name"] == r.name);
    CHECK(j["verdict"] == "pass");
    CHECK(j["parameters"].contains("resolved"));
  }
  const std::string csv = slurp(out / "summary.csv");
  CHECK(csv == summaryCsv(o.results));
  CHECK(csv.rfind("check,fittedConstant,stabilityRatio,verdict\n", 0) == 0);
  CHECK(fs::exists(out / "suite.log"));
  CHECK(nlohmann::json::parse(slurp(out / "metadata.json")).contains("startedAt"));

  // a second run with one thread is byte-identical apart from metadata.json
  const fs::path again = scratch("again");
  c.settings.out = again.string();
  c.settings.threads = 1;
  runSuite(c);
  for (const auto& entry : fs::directory_iterator(out)) {
    const std::string name = entry.path().filename().string();
    if (name == "metadata.json") continue;
    CAPTURE(name);
    CHECK(slurp(entry.path()) == slurp(again / name));
  }
  fs::remove_all(out);
  fs::remove_all(again);
}

TEST_CASE("exit codes") {
  SuiteConfig c = parseConfig(slurp(fs::path(FRACMORREY_TEST_DATA) / "known_fail.yaml"));
  const fs::path out = scratch("fail");
  c.settings.out = out.string();
  const SuiteOutcome o = runSuite(c);
  CHECK(o.exitCode == 1);
  CHECK((o.results.at(0).report.verdict == Verdict::Pass));
  CHECK((o.results.at(1).report.verdict == Verdict::Fail));
  fs::remove_all(out);

  std::vector<SuiteResult> rs(2);
  CHECK(exitCodeFor(rs) == 0);
  rs[1].report.verdict = Verdict::Warn;
  CHECK(exitCodeFor(rs) == 0);
  rs[0].report.verdict = Verdict::Fail;
  CHECK(exitCodeFor(rs) == 1);
  rs[1].error = "boom";
  CHECK(exitCodeFor(rs) == 2);
}

TEST_CASE("jitter is reproducible from the seed") {
  SuiteConfig c = parseConfig(
      "suite:\n  jitter: true\n  seed: 5\nchecks:\n  - name: size\n    check: checkSizeCondition\n");
  const CheckReport a = runCheck(c.checks[0], c.settings);
  const CheckReport b = runCheck(c.checks[0], c.settings);
  CHECK(a.toJson().dump() == b.toJson().dump());
  c.settings.seed = 6;
  const CheckReport d = runCheck(c.checks[0], c.settings);
  CHECK(a.toJson()["samples"][0]["coords"] != d.toJson()["samples"][0]["coords"]);
  c.settings.jitter = false;
  const CheckReport e = runCheck(c.checks[0], c.settings);
  CHECK(e.toJson()["samples"][0]["coords"]["x"][0] == 1.5);
}
