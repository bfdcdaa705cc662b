#include "fracmorrey/suite.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "fracmorrey/catalog.hpp"
#include "fracmorrey/errors.hpp"
#include "fracmorrey/harness.hpp"

namespace fracmorrey {

namespace {

using nlohmann::json;

// ---- YAML to JSON ------------------------------------------------------------

json scalarToJson(const YAML::Node& node) {
  const std::string& text = node.Scalar();
  if (node.Tag() == "!") return text;  // quoted
  if (text == "true" || text == "True") return true;
  if (text == "false" || text == "False") return false;
  if (text == "null" || text == "~" || text.empty()) return nullptr;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  return text;
}

json yamlToJson(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar:
      return scalarToJson(node);
    case YAML::NodeType::Sequence: {
      json out = json::array();
      for (const YAML::Node& item : node) out.push_back(yamlToJson(item));
      return out;
    }
    case YAML::NodeType::Map: {
      json out = json::object();
      for (const auto& kv : node) out[kv.first.as<std::string>()] = yamlToJson(kv.second);
      return out;
    }
  }
  return nullptr;
}

int lineOf(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

// ---- typed parameter access --------------------------------------------------------

/// Resolved parameters of one check with the config lines of the user-given keys.
class Params {
 public:
  Params(json values, std::map<std::string, int> lines, int entryLine)
      : values_(std::move(values)), lines_(std::move(lines)), entryLine_(entryLine) {}

  const json& values() const { return values_; }

  [[noreturn]] void error(const std::string& key, const std::string& message) const {
    const auto it = lines_.find(key);
    throw ConfigError(key, it != lines_.end() ? it->second : entryLine_, message);
  }

  const json& raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) error(key, "missing required parameter");
    return *it;
  }

  double number(const std::string& key) const { return toNumber(key, raw(key)); }

  double toNumber(const std::string& key, const json& v) const {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      // "10/3" style fractions are allowed for exponents.
      const std::string s = v.get<std::string>();
      const auto slash = s.find('/');
      try {
        if (slash != std::string::npos) {
          std::size_t a = 0;
          std::size_t b = 0;
          const double num = std::stod(s.substr(0, slash), &a);
          const double den = std::stod(s.substr(slash + 1), &b);
          if (a == slash && b == s.size() - slash - 1 && den != 0.0) return num / den;
        }
      } catch (const std::exception&) {
      }
    }
    error(key, "expected a number, got " + v.dump());
  }

  int integer(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_number_integer()) error(key, "expected an integer, got " + v.dump());
    return v.get<int>();
  }

  bool boolean(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_boolean()) error(key, "expected true or false, got " + v.dump());
    return v.get<bool>();
  }

  std::string text(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_string()) error(key, "expected a string, got " + v.dump());
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_array()) error(key, "expected a list of numbers");
    std::vector<double> out;
    for (const json& x : v) out.push_back(toNumber(key, x));
    return out;
  }

  std::vector<std::string> texts(const std::string& key) const {
    const json& v = raw(key);
    if (v.is_string()) return {v.get<std::string>()};
    if (!v.is_array()) error(key, "expected a name or a list of names");
    std::vector<std::string> out;
    for (const json& x : v) {
      if (!x.is_string()) error(key, "expected names, got " + x.dump());
      out.push_back(x.get<std::string>());
    }
    return out;
  }

  Point point(const std::string& key, int n) const { return toPoint(key, raw(key), n); }

  Point toPoint(const std::string& key, const json& v, int n) const {
    if (v.is_number() && n == 1) return Point{v.get<double>()};
    if (!v.is_array() || static_cast<int>(v.size()) != n) {
      error(key, "expected a point with " + std::to_string(n) + " coordinates, got " + v.dump());
    }
    Point p(n);
    for (int i = 0; i < n; ++i) p[i] = toNumber(key, v[static_cast<std::size_t>(i)]);
    return p;
  }

  std::vector<Point> points(const std::string& key, int n) const {
    const json& v = raw(key);
    if (!v.is_array() || v.empty()) error(key, "expected a non-empty list of points");
    std::vector<Point> out;
    for (const json& x : v) out.push_back(toPoint(key, x, n));
    return out;
  }

  LogGrid grid(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_object()) error(key, "expected {rMin, rMax, count}");
    for (const auto& [k, _] : v.items()) {
      if (k != "rMin" && k != "rMax" && k != "count") error(key, "unknown grid field '" + k + "'");
    }
    if (!v.contains("rMin") || !v.contains("rMax") || !v.contains("count") || !v["count"].is_number_integer()) {
      error(key, "grid needs rMin, rMax and an integer count");
    }
    return wrap(key, [&] { return logGrid(toNumber(key, v["rMin"]), toNumber(key, v["rMax"]), v["count"].get<int>()); });
  }

  PhiWeight weight(const std::string& key) const {
    const json& v = raw(key);
    if (v.is_string()) return wrap(key, [&] { return catalogWeight(v.get<std::string>()); });
    if (!v.is_object() || !v.contains("name") || !v["name"].is_string()) {
      error(key, "expected a weight name or {name, <parameters>}");
    }
    std::map<std::string, double> params;
    for (const auto& [k, x] : v.items()) {
      if (k != "name") params[k] = toNumber(key, x);
    }
    return wrap(key, [&] { return catalogWeight(v["name"].get<std::string>(), params); });
  }

  /// Runs `fn`, turning domain errors into config errors against `key`.
  template <class F>
  auto wrap(const std::string& key, F&& fn) const -> decltype(fn()) {
    try {
      return fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      error(key, e.what());
    }
  }

 private:
  json values_;
  std::map<std::string, int> lines_;
  int entryLine_;
};

// ---- shared builders ---------------------------------------------------------------

const std::vector<std::string> kExponentFields{"s", "p", "pi", "lambdas", "q", "q1", "regime"};
const std::vector<std::string> kLebesgueFields{"s", "p", "q", "regime"};

void requireFields(const Params& P, const std::string& key, const json& obj, const std::vector<std::string>& allowed) {
  if (!obj.is_object()) P.error(key, "expected an object");
  for (const auto& [k, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) P.error(key, "unknown field '" + k + "'");
  }
}

Regime regimeOf(const Params& P, const std::string& key, const json& obj) {
  if (!obj.contains("regime") || !obj["regime"].is_string()) P.error(key, "regime must be sPrimeLeq or qLtS");
  return P.wrap(key, [&] { return regimeFromString(obj["regime"].get<std::string>()); });
}

ExponentSet exponentSet(const Params& P, int n, double alpha) {
  const std::string key = "exponents";
  const json& e = P.raw(key);
  requireFields(P, key, e, kExponentFields);
  for (const char* k : {"s", "p", "pi", "lambdas"}) {
    if (!e.contains(k)) P.error(key, std::string("missing field '") + k + "'");
  }
  auto list = [&](const char* k) {
    std::vector<double> out;
    if (!e[k].is_array()) P.error(key, std::string(k) + " must be a list");
    for (const json& x : e[k]) out.push_back(P.toNumber(key, x));
    return out;
  };
  const Regime regime = regimeOf(P, key, e);
  return P.wrap(key, [&] {
    const double s = P.toNumber(key, e["s"]);
    const double p = P.toNumber(key, e["p"]);
    if (e.contains("q") || e.contains("q1")) {
      if (!e.contains("q") || !e.contains("q1")) throw DomainError("give both q and q1, or neither");
      return ExponentSet::make(n, alpha, s, p, list("pi"), list("lambdas"), P.toNumber(key, e["q"]),
                               P.toNumber(key, e["q1"]), regime);
    }
    return ExponentSet::derive(n, alpha, s, p, list("pi"), list("lambdas"), regime);
  });
}

LebesgueExponents lebesgueExponents(const Params& P, int n, double alpha) {
  const std::string key = "exponents";
  const json& e = P.raw(key);
  requireFields(P, key, e, kLebesgueFields);
  for (const char* k : {"s", "p"}) {
    if (!e.contains(k)) P.error(key, std::string("missing field '") + k + "'");
  }
  const Regime regime = regimeOf(P, key, e);
  return P.wrap(key, [&] {
    const double s = P.toNumber(key, e["s"]);
    const double p = P.toNumber(key, e["p"]);
    if (e.contains("q")) return LebesgueExponents::make(n, alpha, s, p, P.toNumber(key, e["q"]), regime);
    return LebesgueExponents::derive(n, alpha, s, p, regime);
  });
}

int dimension(const Params& P) {
  const int n = P.integer("n");
  if (n != 1 && n != 2) P.error("n", "only n = 1 and n = 2 are supported");
  return n;
}

OperatorConfig operatorConfig(const Params& P, int n) {
  const RoughKernel kernel = P.wrap("kernel", [&] { return catalogKernel(P.text("kernel"), n); });
  const double alpha = P.number("alpha");
  QuadratureSettings qs;
  qs.relTol = P.number("relTol");
  if (!(qs.relTol > 0.0 && qs.relTol < 1.0)) P.error("relTol", "must lie in (0, 1)");
  return P.wrap("alpha", [&] { return OperatorConfig(kernel, alpha, qs); });
}

TestFunction function(const Params& P, const std::string& key, int n) {
  return P.wrap(key, [&] { return catalogFunction(P.text(key), n); });
}

std::vector<TestFunction> functions(const Params& P, const std::string& key, int n) {
  std::vector<TestFunction> out;
  for (const std::string& name : P.texts(key)) out.push_back(P.wrap(key, [&] { return catalogFunction(name, n); }));
  return out;
}

std::vector<Symbol> symbols(const Params& P, const std::string& key, int n) {
  std::vector<Symbol> out;
  for (const std::string& name : P.texts(key)) out.push_back(P.wrap(key, [&] { return catalogSymbol(name, n); }));
  return out;
}

std::vector<double> dilations(const Params& P) {
  std::vector<double> out = P.numbers("dilations");
  if (out.empty()) P.error("dilations", "need at least one dilation factor");
  for (double d : out) {
    if (!(d > 0.0)) P.error("dilations", "dilation factors must be positive");
  }
  return out;
}

HarnessOptions harnessOptions(const Params& P) {
  HarnessOptions o;
  o.stabilityCeiling = P.number("stabilityCeiling");
  if (!(o.stabilityCeiling >= 1.0)) P.error("stabilityCeiling", "must be >= 1");
  return o;
}

std::vector<Point> jittered(std::vector<Point> points, const SuiteSettings& settings, const std::string& name) {
  if (!settings.jitter) return points;
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  std::mt19937_64 rng(settings.seed ^ h);
  std::uniform_real_distribution<double> offset(-settings.jitterAmplitude, settings.jitterAmplitude);
  for (Point& p : points) {
    for (int i = 0; i < p.dim(); ++i) p[i] += offset(rng);
  }
  return points;
}

json gridDefault(double rMin, double rMax, int count) { return {{"rMin", rMin}, {"rMax", rMax}, {"count", count}}; }

json originDefault() { return nullptr; }  // resolved to the origin of R^n

// ---- registry --------------------------------------------------------------------

struct RunContext {
  const SuiteSettings& settings;
  const std::string& name;
};

using Prepared = std::function<CheckReport()>;
using Preparer = std::function<Prepared(const Params&, const RunContext&)>;

struct RegistryEntry {
  std::string summary;
  json defaults;
  Preparer prepare;
};

json exponentSetA() {
  return {{"s", 40}, {"p", 1.25}, {"pi", {"20/3"}}, {"lambdas", {0}}, {"regime", "sPrimeLeq"}};
}

const std::map<std::string, RegistryEntry>& registry() {
  static const std::map<std::string, RegistryEntry> entries = [] {
    std::map<std::string, RegistryEntry> r;
    const json common{{"n", 1}, {"stabilityCeiling", 3.0}};
    auto with = [&common](json extra) {
      json out = common;
      out.update(extra);
      return out;
    };
    const json op{{"kernel", "one"}, {"alpha", 0.5}, {"relTol", 1e-6}};

    r["checkSizeCondition"].summary = "|T f(x)| <= T~|f|(x) at points x outside supp f";
    r["checkSizeCondition"].defaults = with(op);
    r["checkSizeCondition"].defaults.update(json{{"f", "indicator"}, {"points", nullptr}});
    r["checkSizeCondition"].prepare = [](const Params& P, const RunContext& ctx) -> Prepared {
      const int n = dimension(P);
      const OperatorConfig cfg = operatorConfig(P, n);
      const TestFunction f = function(P, "f", n);
      const std::vector<Point> xs = jittered(P.points("points", n), ctx.settings, ctx.name);
      const HarnessOptions o = harnessOptions(P);
      return [=] { return checkSizeCondition(cfg, f, xs, o); };
    };

    r["checkMajorantDomination"].summary = "M f(x) <= v_n^{-(n-alpha)/n} T~|f|(x) at sample points";
    r["checkMajorantDomination"].defaults = with(op);
    r["checkMajorantDomination"].defaults.update(json{{"f", "indicator"}, {"points", nullptr}});
    r["checkMajorantDomination"].prepare = [](const Params& P, const RunContext& ctx) -> Prepared {
      const int n = dimension(P);
      const OperatorConfig cfg = operatorConfig(P, n);
      const TestFunction f = function(P, "f", n);
      const std::vector<Point> xs = jittered(P.points("points", n), ctx.settings, ctx.name);
      const HarnessOptions o = harnessOptions(P);
      return [=] { return checkMajorantDomination(cfg, f, xs, o); };
    };

    r["checkLebesgueBoundedness"].summary = "||T f||_{L_q} <= C ||Omega|| ||f||_{L_p} over a family and its dilates";
    r["checkLebesgueBoundedness"].defaults = with(op);
    r["checkLebesgueBoundedness"].defaults.update(
        json{{"exponents", {{"s", 4}, {"p", "4/3"}, {"regime", "sPrimeLeq"}}},
             {"family", {"indicator", "gaussian"}},
             {"dilations", {0.25, 1, 4}},
             {"truncation", 8.0}});
    r["checkLebesgueBoundedness"].prepare = [](const Params& P, const RunContext&) -> Prepared {
      const int n = dimension(P);
      const OperatorConfig cfg = operatorConfig(P, n);
      const LebesgueExponents e = lebesgueExponents(P, n, cfg.alpha);
      const std::vector<TestFunction> family = functions(P, "family", n);
      const std::vector<double> lambdas = dilations(P);
      HarnessOptions o = harnessOptions(P);
      o.lebesgueTruncation = P.number("truncation");
      if (!(o.lebesgueTruncation > 1.0)) P.error("truncation", "must be > 1");
      return [=] { return checkLebesgueBoundedness(cfg, e, family, lambdas, o); };
    };

    r["checkKernelShellBound"].summary = "||Omega(x, x - .)||_{L_s(B(x0,t))} <= C ||Omega|| |B(x0,2t)|^{1/s}";
    r["checkKernelShellBound"].defaults = with(json{{"kernel", "theta1"},
                                                    {"s", 4},
                                                    {"x0", originDefault()},
                                                    {"points", nullptr},
                                                    {"tGrid", gridDefault(0.5, 8, 5)}});
    r["checkKernelShellBound"].prepare = [](const Params& P, const RunContext& ctx) -> Prepared {
      const int n = dimension(P);
      const RoughKernel kernel = P.wrap("kernel", [&] { return catalogKernel(P.text("kernel"), n); });
      const double s = P.number("s");
      if (!(s > 1.0)) P.error("s", "must be > 1");
      const Point x0 = P.point("x0", n);
      const std::vector<Point> xs = jittered(P.points("points", n), ctx.settings, ctx.name);
      const LogGrid t = P.grid("tGrid");
      const HarnessOptions o = harnessOptions(P);
      return [=] { return checkKernelShellBound(kernel, s, xs, t, x0, o); };
    };

    const json campanato{{"b", "log"}, {"p", 1}, {"lambda", 0}, {"x0", originDefault()},
                         {"radii", gridDefault(1e-3, 1e3, 13)}};
    const std::pair<const char*, CampanatoEstimate> estimates[] = {
        {"checkCampanatoA", CampanatoEstimate::A},
        {"checkCampanatoB", CampanatoEstimate::B},
        {"checkCampanatoC", CampanatoEstimate::C}};
    const char* summaries[] = {
        "(|B(r1)|^{-(1+lambda p)} int_{B(r1)} |b - b_{B(r2)}|^p)^{1/p} <= C (1 + |ln(r1/r2)|) ||b||",
        "|b_{B(r1)} - b_{B(r2)}| <= C (1 + |ln(r1/r2)|) |B(r1)|^lambda ||b||",
        "(int_{B(r1)} |b - b_{B(r1)}|^p)^{1/p} <= C (1 + |ln(r1/r2)|) r1^{n/p + n lambda} ||b||"};
    for (int i = 0; i < 3; ++i) {
      const CampanatoEstimate which = estimates[i].second;
      RegistryEntry& e = r[estimates[i].first];
      e.summary = summaries[i];
      e.defaults = with(campanato);
      e.prepare = [which](const Params& P, const RunContext&) -> Prepared {
        const int n = dimension(P);
        const Symbol b = P.wrap("b", [&] { return catalogSymbol(P.text("b"), n); });
        const double p = P.number("p");
        if (!(p >= 1.0)) P.error("p", "must be >= 1");
        const double lambda = P.number("lambda");
        if (!(lambda >= 0.0 && lambda < 1.0 / n)) P.error("lambda", "must lie in [0, 1/n)");
        const Point x0 = P.point("x0", n);
        const LogGrid radii = P.grid("radii");
        const HarnessOptions o = harnessOptions(P);
        return [=] { return checkCampanato(which, b, p, lambda, x0, radii, o); };
      };
    }

    r["checkLocalBoundLemma1"].summary = "local L_q estimate of T f on balls B(x0, r) by a tail integral of ||f||_{L_p}";
    r["checkLocalBoundLemma1"].defaults = with(op);
    r["checkLocalBoundLemma1"].defaults.update(
        json{{"exponents", {{"s", 4}, {"p", "4/3"}, {"regime", "sPrimeLeq"}}},
             {"f", "indicator"},
             {"x0", originDefault()},
             {"rGrid", gridDefault(0.0625, 4, 7)},
             {"dilations", {0.25, 1, 4}}});
    r["checkLocalBoundLemma1"].prepare = [](const Params& P, const RunContext&) -> Prepared {
      const int n = dimension(P);
      const OperatorConfig cfg = operatorConfig(P, n);
      const LebesgueExponents e = lebesgueExponents(P, n, cfg.alpha);
      const TestFunction f = function(P, "f", n);
      const Point x0 = P.point("x0", n);
      const LogGrid grid = P.grid("rGrid");
      const std::vector<double> lambdas = dilations(P);
      const HarnessOptions o = harnessOptions(P);
      return [=] { return checkLocalBoundLemma1(cfg, e, f, x0, grid, lambdas, o); };
    };

    json opA = op;
    opA["alpha"] = 0.1;
    r["checkCommutatorBoundLemma2"].summary = "local L_{q1} estimate of [b, T] f on balls B(x0, r)";
    r["checkCommutatorBoundLemma2"].defaults = with(opA);
    r["checkCommutatorBoundLemma2"].defaults.update(json{{"exponents", exponentSetA()},
                                                         {"b", {"sign"}},
                                                         {"f", "indicator"},
                                                         {"x0", originDefault()},
                                                         {"rGrid", gridDefault(0.0625, 4, 7)},
                                                         {"dilations", {0.25, 1, 4}}});
    r["checkCommutatorBoundLemma2"].prepare = [](const Params& P, const RunContext&) -> Prepared {
      const int n = dimension(P);
      const OperatorConfig cfg = operatorConfig(P, n);
      const ExponentSet e = exponentSet(P, n, cfg.alpha);
      const std::vector<Symbol> b = symbols(P, "b", n);
      if (static_cast<int>(b.size()) != e.m()) P.error("b", "need one symbol per entry of exponents.pi");
      const TestFunction f = function(P, "f", n);
      const Point x0 = P.point("x0", n);
      const LogGrid grid = P.grid("rGrid");
      const std::vector<double> lambdas = dilations(P);
      const HarnessOptions o = harnessOptions(P);
      return [=] { return checkCommutatorBoundLemma2(cfg, e, b, f, x0, grid, lambdas, o); };
    };

    const json pair{{"alpha", 0.1},
                    {"exponents", exponentSetA()},
                    {"phi1", {{"name", "rpow"}, {"a", -0.8}}},
                    {"phi2", {{"name", "rpow"}, {"a", -0.7}}},
                    {"x0", originDefault()},
                    {"rGrid", gridDefault(1e-4, 1e4, 17)}};
    r["checkPhiPairCondition"].summary =
        "int_r^inf (1 + ln(t/r))^m essinf_{tau > t} phi1 tau^{n/p} t^{-D} dt <= C phi2(r) on rGrid";
    r["checkPhiPairCondition"].defaults = with(pair);
    r["checkPhiPairCondition"].prepare = [](const Params& P, const RunContext&) -> Prepared {
      const int n = dimension(P);
      const double alpha = P.number("alpha");
      const ExponentSet e = exponentSet(P, n, alpha);
      const PhiWeight phi1 = P.weight("phi1");
      const PhiWeight phi2 = P.weight("phi2");
      const Point x0 = P.point("x0", n);
      const LogGrid grid = P.grid("rGrid");
      if (grid.decades() < 4.0 - 1e-9) P.error("rGrid", "must span at least 4 decades");
      const HarnessOptions o = harnessOptions(P);
      return [=] { return checkPhiPairCondition(e, phi1, phi2, x0, grid, o); };
    };

    json vanishingPair = pair;
    vanishingPair["smallGrid"] = gridDefault(1e-12, 1, 49);
    r["checkPhiPairVanishing"].summary = "integral bound with phi1 itself, ln(1/r)/phi2 -> 0 and finite c_delta";
    r["checkPhiPairVanishing"].defaults = with(vanishingPair);
    r["checkPhiPairVanishing"].prepare = [](const Params& P, const RunContext&) -> Prepared {
      const int n = dimension(P);
      const double alpha = P.number("alpha");
      const ExponentSet e = exponentSet(P, n, alpha);
      const PhiWeight phi1 = P.weight("phi1");
      const PhiWeight phi2 = P.weight("phi2");
      const Point x0 = P.point("x0", n);
      const LogGrid grid = P.grid("rGrid");
      const LogGrid small = P.grid("smallGrid");
      if (grid.decades() < 4.0 - 1e-9) P.error("rGrid", "must span at least 4 decades");
      if (small.decades() < 4.0 - 1e-9) P.error("smallGrid", "must span at least 4 decades");
      if (!(small.rMin() < 0.1)) P.error("smallGrid", "must reach below r = 0.1");
      const HarnessOptions o = harnessOptions(P);
      return [=] { return checkPhiPairVanishing(e, phi1, phi2, x0, grid, small, o); };
    };

    json morrey = opA;
    morrey.update(json{{"exponents", exponentSetA()},
                       {"b", {"sign"}},
                       {"f", "indicator"},
                       {"phi1", {{"name", "rpow"}, {"a", -0.8}}},
                       {"phi2", {{"name", "rpow"}, {"a", -0.7}}},
                       {"x0", originDefault()}});
    r["checkMorreyBoundedness"].summary = "||[b, T] f||_{LM_{q1,phi2}} <= C prod ||b_i|| ||f||_{LM_{p,phi1}}";
    r["checkMorreyBoundedness"].defaults = with(morrey);
    r["checkMorreyBoundedness"].defaults.update(
        json{{"profileGrid", gridDefault(1e-4, 1e4, 25)}, {"dilations", {0.25, 1, 4}}});
    r["checkMorreyBoundedness"].prepare = [](const Params& P, const RunContext&) -> Prepared {
      const int n = dimension(P);
      const OperatorConfig cfg = operatorConfig(P, n);
      const ExponentSet e = exponentSet(P, n, cfg.alpha);
      const std::vector<Symbol> b = symbols(P, "b", n);
      if (static_cast<int>(b.size()) != e.m()) P.error("b", "need one symbol per entry of exponents.pi");
      const TestFunction f = function(P, "f", n);
      const PhiWeight phi1 = P.weight("phi1");
      const PhiWeight phi2 = P.weight("phi2");
      const Point x0 = P.point("x0", n);
      const LogGrid grid = P.grid("profileGrid");
      const std::vector<double> lambdas = dilations(P);
      const HarnessOptions o = harnessOptions(P);
      return [=] { return checkMorreyBoundedness(cfg, e, b, f, phi1, phi2, x0, grid, lambdas, o); };
    };

    r["checkVanishingImplication"].summary =
        "a vanishing input Morrey profile gives a vanishing output profile for [b, T] f";
    r["checkVanishingImplication"].defaults = with(morrey);
    r["checkVanishingImplication"].defaults.update(json{{"profileGrid", gridDefault(1e-4, 10, 16)}});
    r["checkVanishingImplication"].prepare = [](const Params& P, const RunContext&) -> Prepared {
      const int n = dimension(P);
      const OperatorConfig cfg = operatorConfig(P, n);
      const ExponentSet e = exponentSet(P, n, cfg.alpha);
      const std::vector<Symbol> b = symbols(P, "b", n);
      if (static_cast<int>(b.size()) != e.m()) P.error("b", "need one symbol per entry of exponents.pi");
      const TestFunction f = function(P, "f", n);
      const PhiWeight phi1 = P.weight("phi1");
      const PhiWeight phi2 = P.weight("phi2");
      const Point x0 = P.point("x0", n);
      const LogGrid grid = P.grid("profileGrid");
      const HarnessOptions o = harnessOptions(P);
      return [=] { return checkVanishingImplication(cfg, e, b, f, phi1, phi2, x0, grid, o); };
    };
    return r;
  }();
  return entries;
}

/// Fills the n-dependent defaults (origin x0, sample points) after n is known.
void resolveDimensionDefaults(json& params) {
  const int n = params.value("n", 1);
  if (params.contains("x0") && params["x0"].is_null()) params["x0"] = std::vector<double>(static_cast<std::size_t>(n), 0.0);
  if (params.contains("points") && params["points"].is_null()) {
    if (n == 1) {
      params["points"] = json{{1.5}, {-2.0}, {3.0}, {-4.5}};
    } else {
      params["points"] = json{{1.5, 0.0}, {0.0, -2.0}, {2.0, 2.0}, {-3.0, 1.0}};
    }
  }
}

Prepared prepareInvocation(const CheckInvocation& inv, const SuiteSettings& settings,
                           const std::map<std::string, int>& lines) {
  const auto it = registry().find(inv.check);
  if (it == registry().end()) throw ConfigError("check", inv.line, "unknown check '" + inv.check + "'");
  const Params P(inv.params, lines, inv.line);
  const RunContext ctx{settings, inv.name};
  return it->second.prepare(P, ctx);
}

std::string formatNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void writeFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw Error("failed while writing " + path.string());
}

}  // namespace

// ---- parsing ------------------------------------------------------------------------

SuiteConfig parseConfig(const std::string& text) {
  SuiteConfig config;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", e.mark.line >= 0 ? e.mark.line + 1 : 0, std::string("malformed YAML: ") + e.msg);
  }
  if (!root || root.IsNull()) {
    config.warnings.push_back("empty configuration: nothing to run");
    return config;
  }
  if (!root.IsMap()) throw ConfigError("", lineOf(root), "top level must be a mapping with 'suite' and 'checks'");

  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (key != "suite" && key != "checks") throw ConfigError(key, lineOf(kv.first), "unknown top-level section");
  }

  if (const YAML::Node suite = root["suite"]) {
    if (!suite.IsMap()) throw ConfigError("suite", lineOf(suite), "expected a mapping");
    for (const auto& kv : suite) {
      const std::string key = kv.first.as<std::string>();
      const int line = lineOf(kv.first);
      const json v = yamlToJson(kv.second);
      if (key == "out") {
        if (!v.is_string()) throw ConfigError("suite.out", line, "expected a path");
        config.settings.out = v.get<std::string>();
      } else if (key == "threads") {
        if (!v.is_number_integer() || v.get<int>() < 1) throw ConfigError("suite.threads", line, "expected an integer >= 1");
        config.settings.threads = v.get<int>();
      } else if (key == "seed") {
        if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("suite.seed", line, "expected a non-negative integer");
        config.settings.seed = v.get<std::uint64_t>();
      } else if (key == "jitter") {
        if (!v.is_boolean()) throw ConfigError("suite.jitter", line, "expected true or false");
        config.settings.jitter = v.get<bool>();
      } else if (key == "jitterAmplitude") {
        if (!v.is_number() || !(v.get<double>() >= 0.0)) throw ConfigError("suite.jitterAmplitude", line, "expected a number >= 0");
        config.settings.jitterAmplitude = v.get<double>();
      } else {
        throw ConfigError("suite." + key, line, "unknown suite setting");
      }
    }
  }

  const YAML::Node checks = root["checks"];
  if (!checks || checks.IsNull()) {
    config.warnings.push_back("no checks listed: nothing to run");
    return config;
  }
  if (!checks.IsSequence()) throw ConfigError("checks", lineOf(checks), "expected a list of check entries");

  std::map<std::string, int> seen;
  int index = 0;
  for (const YAML::Node& entry : checks) {
    ++index;
    const int line = lineOf(entry);
    if (!entry.IsMap()) throw ConfigError("checks", line, "each check entry must be a mapping");
    if (!entry["check"]) throw ConfigError("check", line, "entry has no 'check' field");
    CheckInvocation inv;
    inv.line = line;
    inv.check = entry["check"].as<std::string>();
    const auto reg = registry().find(inv.check);
    if (reg == registry().end()) {
      throw ConfigError("check", lineOf(entry["check"]), "unknown check '" + inv.check + "'");
    }
    inv.name = entry["name"] ? entry["name"].as<std::string>() : inv.check + "-" + std::to_string(index);
    if (inv.name.empty() || inv.name.find_first_of("/\\") != std::string::npos || inv.name[0] == '.') {
      throw ConfigError("name", line, "check names must be plain file stems");
    }
    if (seen.count(inv.name)) {
      throw ConfigError("name", line,
                        "duplicate check name '" + inv.name + "' (first at line " + std::to_string(seen[inv.name]) + ")");
    }
    seen[inv.name] = line;

    json params = reg->second.defaults;
    std::map<std::string, int> lines;
    for (const auto& kv : entry) {
      const std::string key = kv.first.as<std::string>();
      if (key == "check" || key == "name") continue;
      if (!params.contains(key)) {
        throw ConfigError(key, lineOf(kv.first), "unknown parameter for " + inv.check);
      }
      lines[key] = lineOf(kv.first);
      params[key] = yamlToJson(kv.second);
    }
    resolveDimensionDefaults(params);
    inv.params = std::move(params);
    // Builds every object once so all validation happens at parse time.
    prepareInvocation(inv, config.settings, lines);
    config.checks.push_back(std::move(inv));
  }
  if (config.checks.empty()) config.warnings.push_back("no checks listed: nothing to run");
  return config;
}

SuiteConfig loadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", 0, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseConfig(ss.str());
}

std::string defaultSuiteDocument() {
  return R"(suite:
  out: reports
  threads: 1
checks:
  - name: size-condition
    check: checkSizeCondition
    kernel: sign_theta1
    f: indicator
  - name: size-condition-2d
    check: checkSizeCondition
    n: 2
    kernel: xdep
  - name: majorant-domination
    check: checkMajorantDomination
    kernel: theta1
    alpha: 0.5
    f: indicator
  - name: majorant-domination-2d
    check: checkMajorantDomination
    n: 2
    kernel: sign_theta1
    f: gaussian
    points: [[0.2, 0.1], [1.0, 1.0], [-2.0, 0.5]]
  - name: lebesgue
    check: checkLebesgueBoundedness
  - name: kernel-shell
    check: checkKernelShellBound
  - name: campanato-a-log
    check: checkCampanatoA
    b: log
  - name: campanato-b-log
    check: checkCampanatoB
    b: log
    radii: {rMin: 1.0e-3, rMax: 1.0e3, count: 25}
  - name: campanato-b-log-2d
    check: checkCampanatoB
    n: 2
    b: log
  - name: campanato-c-sign
    check: checkCampanatoC
    b: sign
  - name: local-bound
    check: checkLocalBoundLemma1
  - name: commutator-bound
    check: checkCommutatorBoundLemma2
  - name: weight-pair
    check: checkPhiPairCondition
  - name: weight-pair-vanishing
    check: checkPhiPairVanishing
  - name: morrey-boundedness
    check: checkMorreyBoundedness
  - name: vanishing-implication
    check: checkVanishingImplication
)";
}

// ---- running -------------------------------------------------------------------------

CheckReport runCheck(const CheckInvocation& invocation, const SuiteSettings& settings) {
  CheckReport report = prepareInvocation(invocation, settings, {})();
  report.parameters["resolved"] = invocation.params;
  return report;
}

int exitCodeFor(const std::vector<SuiteResult>& results) {
  for (const SuiteResult& r : results) {
    if (!r.error.empty()) return 2;
  }
  for (const SuiteResult& r : results) {
    if (r.report.verdict == Verdict::Fail) return 1;
  }
  return 0;
}

std::string summaryCsv(const std::vector<SuiteResult>& results) {
  std::string out = "check,fittedConstant,stabilityRatio,verdict\n";
  for (const SuiteResult& r : results) {
    if (!r.error.empty()) {
      out += r.name + ",,,error\n";
      continue;
    }
    out += r.name + "," + formatNumber(r.report.fittedConstant) + "," + formatNumber(r.report.stabilityRatio) + "," +
           toString(r.report.verdict) + "\n";
  }
  return out;
}

SuiteOutcome runSuite(const SuiteConfig& config, std::ostream* log) {
  namespace fs = std::filesystem;
  const fs::path outDir(config.settings.out);
  fs::create_directories(outDir);
  const auto started = std::chrono::system_clock::now();

  SuiteOutcome outcome;
  outcome.results.resize(config.checks.size());
  std::vector<double> seconds(config.checks.size(), 0.0);
  std::atomic<std::size_t> next{0};
  std::mutex logMutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < config.checks.size(); i = next++) {
      const CheckInvocation& inv = config.checks[i];
      SuiteResult& result = outcome.results[i];
      result.name = inv.name;
      result.check = inv.check;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        result.report = runCheck(inv, config.settings);
      } catch (const std::exception& e) {
        result.error = e.what();
      }
      seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (log) {
        std::lock_guard<std::mutex> lock(logMutex);
        *log << inv.name << ": " << (result.error.empty() ? toString(result.report.verdict) : "error") << "\n";
      }
    }
  };
  const int threads = std::max(1, std::min<int>(config.settings.threads, static_cast<int>(config.checks.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::string suiteLog;
  for (const std::string& w : config.warnings) suiteLog += "warning: " + w + "\n";
  for (const SuiteResult& r : outcome.results) {
    json doc;
    if (r.error.empty()) {
      doc = r.report.toJson();
      suiteLog += r.name + " [" + r.check + "] " + toString(r.report.verdict) +
                  " fitted=" + formatNumber(r.report.fittedConstant) +
                  " stability=" + formatNumber(r.report.stabilityRatio) + "\n";
      for (const std::string& n : r.report.notes) suiteLog += "  " + n + "\n";
    } else {
      doc = {{"schemaVersion", kReportSchemaVersion}, {"check", r.check}, {"verdict", "error"}, {"error", r.error}};
      suiteLog += r.name + " [" + r.check + "] error: " + r.error + "\n";
    }
    doc["name"] = r.name;
    writeFile(outDir / (r.name + ".json"), doc.dump(2) + "\n");
  }
  outcome.exitCode = exitCodeFor(outcome.results);
  suiteLog += "exit code " + std::to_string(outcome.exitCode) + "\n";
  writeFile(outDir / "summary.csv", summaryCsv(outcome.results));
  writeFile(outDir / "suite.log", suiteLog);

  const std::time_t stamp = std::chrono::system_clock::to_time_t(started);
  char iso[32];
  std::strftime(iso, sizeof iso, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&stamp));
  json meta{{"startedAt", iso}, {"threads", config.settings.threads}, {"seed", config.settings.seed},
            {"jitter", config.settings.jitter}};
  json timings = json::object();
  for (std::size_t i = 0; i < outcome.results.size(); ++i) timings[outcome.results[i].name] = seconds[i];
  meta["seconds"] = timings;
  writeFile(outDir / "metadata.json", meta.dump(2) + "\n");
  return outcome;
}

// ---- descriptions ------------------------------------------------------------------------

std::vector<CheckDescription> registeredChecks() {
  std::vector<CheckDescription> out;
  for (const auto& [name, entry] : registry()) {
    json defaults = entry.defaults;
    resolveDimensionDefaults(defaults);
    out.push_back({name, entry.summary, defaults});
  }
  return out;
}

CheckDescription describeCheck(const std::string& name) {
  for (CheckDescription& d : registeredChecks()) {
    if (d.name == name) return d;
  }
  throw ConfigError("check", 0, "unknown check '" + name + "'");
}

}  // namespace fracmorrey
