#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcv/beltrami.hpp"
#include "bcv/gravity.hpp"

namespace bcv::cli {

inline constexpr const char* kSchemaVersion = "1.0.0";
inline constexpr int kMaxDim = 4;

/// Bad config file: missing file, schema violation, unresolved name, parse error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind {
  CourantAxioms,
  VertexLeibniz,
  Quasiclassical,
  Theorem11,
  McResiduals,
  EinsteinResiduals,
  Equivalence,
  KahlerIdentity,
  ComplexChecks,
};

std::string to_string(ScenarioKind k);
std::optional<ScenarioKind> scenario_kind_from_string(const std::string& s);
const std::vector<ScenarioKind>& all_scenario_kinds();

struct FieldDef {
  std::string kind;  // bivector | metric | kahler-potential | family | beltrami | section | metric-triple
  std::optional<HermitianData> hermitian;
  std::optional<BeltramiCourant> beltrami;
  std::optional<SectionE> section;
  std::optional<TensorField> G, B;
  std::optional<Expr> Phi;
};

struct PointSpec {
  std::vector<std::vector<Complex>> list;  // explicit points; overrides sampling when non-empty
  int count = 10;
  double box = 0.5;
  bool real_slice = true;
  double max_condition = 1e6;
};

struct RandomSpec {
  bool enabled = false;
  int sections = 3;
  int functions = 2;
  int degree = 2;
  int elements = 4;
};

struct ScenarioConfig {
  std::string source;
  ScenarioKind kind = ScenarioKind::CourantAxioms;
  Chart chart;
  std::map<std::string, FieldDef> fields;
  // inputs
  std::vector<std::string> sections;
  std::vector<Expr> functions;
  std::vector<std::string> function_text;
  std::string alpha, M, metric, background;
  RandomSpec random;
  PointSpec points;
  int order = 3;
  double tol = 1e-8;
  std::uint64_t seed = 1;
};

ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& yaml_text, const std::string& source = "<inline>");

/// Built-in config used when a scenario subcommand is given no file.
std::string default_config(ScenarioKind k);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> order;
  std::optional<double> tol;
  std::optional<int> points;
};

void apply(ScenarioConfig& cfg, const Overrides& o);

/// Runs the scenario over all points and assembles the report document.
nlohmann::json run_scenario(const ScenarioConfig& cfg);

/// Canonical serialization: two-space indent, trailing newline.
std::string dump(const nlohmann::json& report);

}  // namespace bcv::cli
