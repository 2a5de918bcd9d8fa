#include <doctest.h>

#include "bcv/scenario.hpp"

using namespace bcv;
using namespace bcv::cli;

namespace {

const char* kFlat = R"(
scenario: equivalence
chart: {dim: 2}
tolerance: 1.0e-10
fields:
  g: {kind: bivector, components: [[1, 0], [0, 1]], phi0: "0"}
inputs: {metric: g}
points: {count: 20}
)";

std::string error_of(const std::string& yaml) {
  try {
    parse_config(yaml);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("load_config examples") {
  auto cfg = parse_config(kFlat);
  CHECK(cfg.kind == ScenarioKind::Equivalence);
  CHECK(cfg.chart.dim == 2);
  CHECK(cfg.fields.at("g").hermitian.has_value());

  std::string yaml = kFlat;
  yaml.replace(yaml.find("metric: g}"), 10, "metric: g2}");
  CHECK(error_of(yaml).find("g2") != std::string::npos);

  yaml = kFlat;
  yaml.replace(yaml.find("dim: 2"), 6, "dim: 9");
  CHECK(error_of(yaml).find("dim") != std::string::npos);

  const auto parse_err = error_of("scenario: mc-residuals\nchart: {dim: 1}\nfields:\n  g: {kind: kahler-potential, "
                                  "potential: \"z1*(zb1\"}\ninputs: {metric: g}\n");
  CHECK(parse_err.find("line 1, column") != std::string::npos);

  CHECK(error_of("scenario: nope\nchart: {dim: 1}\n").find("nope") != std::string::npos);
  CHECK(error_of("scenario: theorem11\nchart: {dim: 1}\n").find("inputs") != std::string::npos);
  // a section cannot stand in for a metric
  CHECK(error_of("scenario: mc-residuals\nchart: {dim: 1}\nfields:\n  s: {kind: section}\ninputs: {metric: s}\n")
            .find("kind 'section'") != std::string::npos);
  CHECK_THROWS_AS(load_config("/no/such/file.yaml"), ConfigError);

  auto pts = parse_config("scenario: mc-residuals\nchart: {dim: 1}\nfields:\n  g: {kind: family, family: flat}\n"
                          "inputs: {metric: g}\npoints:\n  - [\"0.3+0.1i\", \"0.3-0.1i\"]\n");
  REQUIRE(pts.points.list.size() == 1);
  CHECK(pts.points.list[0][0] == Complex(0.3, 0.1));
}

TEST_CASE("run_scenario examples") {
  auto flat = run_scenario(parse_config(kFlat));
  CHECK(flat["passed"].get<bool>());
  CHECK(flat["points"].size() == 20);
  for (const auto& p : flat["points"]) {
    CHECK(p["classification"] == "both-vanish");
    CHECK(p["mc_residual"].get<double>() <= 1e-10);
    CHECK(p["einstein_residual"].get<double>() <= 1e-10);
  }

  auto t11 = parse_config(default_config(ScenarioKind::Theorem11));
  apply(t11, {.seed = 42});
  auto r = run_scenario(t11);
  CHECK(r["passed"].get<bool>());
  for (const auto& c : r["checks"]) CHECK(c["max_residual"].get<double>() <= 1e-8);

  auto fs = run_scenario(parse_config(default_config(ScenarioKind::KahlerIdentity)));
  CHECK(fs["passed"].get<bool>());
}

TEST_CASE("reports are deterministic") {
  for (auto kind : all_scenario_kinds()) {
    INFO(to_string(kind));
    const auto cfg = parse_config(default_config(kind));
    auto a = run_scenario(cfg), b = run_scenario(cfg);
    a.erase("timing");
    b.erase("timing");
    CHECK(dump(a) == dump(b));
    CHECK(a["passed"].get<bool>());
  }
}

TEST_CASE("overrides") {
  auto cfg = parse_config(kFlat);
  apply(cfg, {.seed = 5, .order = 4, .tol = 1e-6, .points = 3});
  CHECK(cfg.seed == 5);
  CHECK(cfg.order == 4);
  CHECK(cfg.points.count == 3);
  CHECK_THROWS_AS(apply(cfg, {.order = 7}), ConfigError);
  CHECK_THROWS_AS(apply(cfg, {.tol = -1.0}), ConfigError);
}
