#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "maser/config.hpp"

using namespace maser;

namespace {
const char* kMinimal = R"({"params": {"dimensionless": {"xi": "1/2", "eta": "1/3", "theta": 0.7}}, "seed": 5})";

std::vector<std::string> pointers(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    std::vector<std::string> out;
    for (const auto& v : e.violations()) out.push_back(v.pointer);
    return out;
  }
  return {};
}

bool has(const std::vector<std::string>& v, const std::string& p) { return std::find(v.begin(), v.end(), p) != v.end(); }
}  // namespace

TEST_CASE("minimal config takes defaults") {
  const auto cfg = parse_config(kMinimal);
  CHECK(cfg.seed == 5);
  CHECK(cfg.d == 64);
  CHECK(cfg.rho0 == "fock:0");
  CHECK(cfg.params.exactness() == Exactness::ExactRational);
  CHECK(cfg.params.xi == doctest::Approx(0.5));
  CHECK(cfg.params.phi == 0.0);
}

TEST_CASE("canonical form round-trips") {
  const auto cfg = parse_config(kMinimal);
  const std::string text = canonical_json(cfg);
  CHECK(canonical_json(parse_config(text)) == text);
  CHECK(text.find("\"format_version\": 1") != std::string::npos);
}

TEST_CASE("physical parameters resolve to dimensionless ones") {
  const auto cfg = parse_config(
      R"({"params": {"physical": {"epsilon": 2, "epsilon0": 1.5, "lambda": 0.3, "tau": 1.2, "beta": 0.4}}, "seed": 1})");
  CHECK(cfg.source == RunConfig::Source::Physical);
  CHECK(cfg.params.theta == doctest::Approx(0.8));
  CHECK(cfg.params.phi == doctest::Approx(2.4));
}

TEST_CASE("violations carry pointers and are all reported") {
  CHECK(has(pointers(R"({"params": {"dimensionless": {"xi": 1, "eta": 0, "theta": 1},
                                    "physical": {"epsilon": 1, "epsilon0": 1, "lambda": 1, "tau": 1, "beta": 1}},
                         "seed": 1})"),
            "/params"));
  CHECK(has(pointers(R"({"params": {"dimensionless": {"xi": 1, "eta": 0, "theta": 1}}})"), "/seed"));
  CHECK(has(pointers(R"({"params": {"dimensionless": {"xi": 1, "eta": 0, "theta": 1}}, "seed": 1,
                         "d": 10, "rho0": "fock:5"})"),
            "/d"));
  const auto many = pointers(R"({"params": {"dimensionless": {"xi": -1, "eta": 0, "theta": 1}}, "seed": 1,
                                 "horizon": -3, "colour": "red", "outcomes": {"horizon": 12}})");
  CHECK(has(many, "/params/dimensionless/xi"));
  CHECK(has(many, "/horizon"));
  CHECK(has(many, "/colour"));
  CHECK(has(many, "/outcomes/horizon"));
  CHECK(has(pointers("{not json"), ""));
  CHECK(has(pointers(R"({"format_version": 2, "params": {"dimensionless": {"xi": 1, "eta": 0, "theta": 1}}, "seed": 1})"),
            "/format_version"));
}
