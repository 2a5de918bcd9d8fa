#include "bcv/scenario.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <yaml-cpp/yaml.h>

#include "bcv/homotopy.hpp"
#include "bcv/sampling.hpp"

namespace bcv::cli {

using nlohmann::json;

namespace {

const std::vector<std::pair<ScenarioKind, std::string>> kKindNames{
    {ScenarioKind::CourantAxioms, "courant-axioms"},
    {ScenarioKind::VertexLeibniz, "vertex-leibniz"},
    {ScenarioKind::Quasiclassical, "quasiclassical"},
    {ScenarioKind::Theorem11, "theorem11"},
    {ScenarioKind::McResiduals, "mc-residuals"},
    {ScenarioKind::EinsteinResiduals, "einstein-residuals"},
    {ScenarioKind::Equivalence, "equivalence"},
    {ScenarioKind::KahlerIdentity, "kahler-identity"},
    {ScenarioKind::ComplexChecks, "complex-checks"},
};

const std::set<std::string> kHermitianKinds{"bivector", "metric", "kahler-potential", "family"};

}  // namespace

std::string to_string(ScenarioKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "unknown";
}

std::optional<ScenarioKind> scenario_kind_from_string(const std::string& s) {
  for (const auto& [kind, name] : kKindNames)
    if (name == s) return kind;
  return std::nullopt;
}

const std::vector<ScenarioKind>& all_scenario_kinds() {
  static const std::vector<ScenarioKind> kinds = [] {
    std::vector<ScenarioKind> v;
    for (const auto& kn : kKindNames) v.push_back(kn.first);
    return v;
  }();
  return kinds;
}

// ---------------------------------------------------------------- YAML reading

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ConfigError(path + ": " + msg); }

void check_keys(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
  if (!node.IsMap()) fail(path, "expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(path, "unknown key '" + key + "'");
  }
}

std::string scalar(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) fail(path, "expected a scalar");
  return n.Scalar();
}

double as_double(const YAML::Node& n, const std::string& path) {
  try {
    return n.as<double>();
  } catch (const YAML::Exception&) {
    fail(path, "expected a number");
  }
}

int as_int(const YAML::Node& n, const std::string& path) {
  try {
    return n.as<int>();
  } catch (const YAML::Exception&) {
    fail(path, "expected an integer");
  }
}

bool as_bool(const YAML::Node& n, const std::string& path) {
  try {
    return n.as<bool>();
  } catch (const YAML::Exception&) {
    fail(path, "expected true or false");
  }
}

std::uint64_t as_u64(const YAML::Node& n, const std::string& path) {
  try {
    return n.as<std::uint64_t>();
  } catch (const YAML::Exception&) {
    fail(path, "expected a non-negative integer");
  }
}

struct Ctx {
  int dim = 1;
  std::vector<std::string> params;
  ParamValues values;
};

Expr as_expr(const YAML::Node& n, const std::string& path, const Ctx& c) {
  const std::string text = scalar(n, path);
  try {
    return parse(text, c.dim, c.params);
  } catch (const ParseError& e) {
    fail(path, "parse error at line " + std::to_string(e.line()) + ", column " + std::to_string(e.column()) + ": " +
                   e.detail());
  }
}

Complex as_complex(const YAML::Node& n, const std::string& path, const Ctx& c) {
  const Expr e = as_expr(n, path, c);
  if (e.max_coord_index() > 0) fail(path, "a point coordinate must be a constant");
  try {
    const std::vector<Complex> origin(2 * c.dim, Complex(0));
    return eval_value(e, origin, c.values);
  } catch (const std::exception& ex) {
    fail(path, ex.what());
  }
}

std::vector<Expr> expr_list(const YAML::Node& n, const std::string& path, const Ctx& c, int len) {
  if (!n.IsSequence()) fail(path, "expected a list");
  if (static_cast<int>(n.size()) != len) fail(path, "expected " + std::to_string(len) + " entries");
  std::vector<Expr> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(as_expr(n[i], path + "[" + std::to_string(i) + "]", c));
  return out;
}

std::vector<Expr> expr_matrix(const YAML::Node& n, const std::string& path, const Ctx& c, int rows) {
  if (!n.IsSequence() || static_cast<int>(n.size()) != rows) {
    fail(path, "expected a " + std::to_string(rows) + "x" + std::to_string(rows) + " matrix");
  }
  std::vector<Expr> out;
  for (int i = 0; i < rows; ++i) {
    auto row = expr_list(n[i], path + "[" + std::to_string(i) + "]", c, rows);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

Expr optional_expr(const YAML::Node& map, const char* key, const std::string& path, const Ctx& c) {
  return map[key] ? as_expr(map[key], path + "." + key, c) : Expr();
}

FieldDef parse_field(const YAML::Node& n, const std::string& path, const Ctx& c, std::uint64_t seed) {
  if (!n.IsMap() || !n["kind"]) fail(path, "a field needs a 'kind'");
  FieldDef f;
  f.kind = scalar(n["kind"], path + ".kind");
  const int d = c.dim;
  if (f.kind == "bivector" || f.kind == "metric") {
    check_keys(n, path, {"kind", "components", "phi0"});
    if (!n["components"]) fail(path, "missing 'components'");
    const std::vector<IndexType> sig = f.kind == "bivector"
                                           ? std::vector{IndexType::HolUp, IndexType::AntiUp}
                                           : std::vector{IndexType::HolDown, IndexType::AntiDown};
    TensorField t(d, sig, expr_matrix(n["components"], path + ".components", c, d));
    const Expr phi0 = optional_expr(n, "phi0", path, c);
    f.hermitian = f.kind == "bivector" ? HermitianData::from_bivector(t, phi0, c.values)
                                       : HermitianData::from_metric(t, phi0, c.values);
  } else if (f.kind == "kahler-potential") {
    check_keys(n, path, {"kind", "potential", "phi0"});
    if (!n["potential"]) fail(path, "missing 'potential'");
    f.hermitian = HermitianData::from_kahler_potential(d, as_expr(n["potential"], path + ".potential", c),
                                                       optional_expr(n, "phi0", path, c), c.values);
  } else if (f.kind == "family") {
    check_keys(n, path, {"kind", "family", "lambda", "phi0", "seed"});
    if (!n["family"]) fail(path, "missing 'family'");
    const std::string fam = scalar(n["family"], path + ".family");
    const Expr phi0 = optional_expr(n, "phi0", path, c);
    Rng rng(n["seed"] ? as_u64(n["seed"], path + ".seed") : seed);
    if (fam == "flat") {
      f.hermitian = flat_family(d, phi0);
    } else if (fam == "linear-dilaton") {
      f.hermitian = linear_dilaton_family(d, n["lambda"] ? as_double(n["lambda"], path + ".lambda") : 0.0);
    } else if (fam == "fubini-study") {
      f.hermitian = fubini_study_family(d, phi0);
    } else if (fam == "fubini-study-potential") {
      f.hermitian = fubini_study_potential(d, phi0);
    } else if (fam == "flat-reparametrized") {
      f.hermitian = flat_reparametrized_family(d);
    } else if (fam == "random-kahler") {
      f.hermitian = random_kahler_family(rng, d);
    } else if (fam == "random-hermitian") {
      f.hermitian = random_hermitian_family(rng, d);
    } else {
      fail(path + ".family", "unknown family '" + fam + "'");
    }
    f.hermitian->params = c.values;
  } else if (f.kind == "beltrami") {
    check_keys(n, path, {"kind", "g", "mu", "mubar", "b"});
    BeltramiCourant M = BeltramiCourant::zero(d);
    auto block = [&](const char* key, TensorField& slot) {
      if (n[key]) slot = TensorField(d, slot.signature(), expr_matrix(n[key], path + "." + key, c, d));
    };
    block("g", M.g);
    block("mu", M.mu);
    block("mubar", M.mub);
    block("b", M.b);
    f.beltrami = M;
  } else if (f.kind == "section") {
    check_keys(n, path, {"kind", "v", "vb", "w", "wb"});
    SectionE s = SectionE::zero(d);
    if (n["v"]) s.v = expr_list(n["v"], path + ".v", c, d);
    if (n["vb"]) s.vb = expr_list(n["vb"], path + ".vb", c, d);
    if (n["w"]) s.w = expr_list(n["w"], path + ".w", c, d);
    if (n["wb"]) s.wb = expr_list(n["wb"], path + ".wb", c, d);
    f.section = s;
  } else if (f.kind == "metric-triple") {
    check_keys(n, path, {"kind", "G", "B", "Phi"});
    for (const char* key : {"G", "B", "Phi"})
      if (!n[key]) fail(path, std::string("missing '") + key + "'");
    const std::vector<IndexType> real2{IndexType::RealDown, IndexType::RealDown};
    f.G = TensorField(d, real2, expr_matrix(n["G"], path + ".G", c, 2 * d));
    f.B = TensorField(d, real2, expr_matrix(n["B"], path + ".B", c, 2 * d));
    f.Phi = as_expr(n["Phi"], path + ".Phi", c);
  } else {
    fail(path + ".kind", "unknown field kind '" + f.kind + "'");
  }
  return f;
}

const FieldDef& resolve(const ScenarioConfig& cfg, const std::string& name, const std::string& path,
                        const std::set<std::string>& kinds) {
  auto it = cfg.fields.find(name);
  if (it == cfg.fields.end()) fail(path, "undefined field '" + name + "'");
  if (!kinds.count(it->second.kind)) {
    std::string allowed;
    for (const auto& k : kinds) allowed += (allowed.empty() ? "" : ", ") + k;
    fail(path, "field '" + name + "' has kind '" + it->second.kind + "', expected one of: " + allowed);
  }
  return it->second;
}

std::string input_name(const YAML::Node& inputs, const char* key) {
  if (!inputs || !inputs[key]) fail(std::string("inputs.") + key, "required input is missing");
  return scalar(inputs[key], std::string("inputs.") + key);
}

}  // namespace

ScenarioConfig parse_config(const std::string& yaml_text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(source + ": YAML error: " + e.what());
  }
  if (!root.IsMap()) throw ConfigError(source + ": top level must be a mapping");
  check_keys(root, "config", {"scenario", "chart", "fields", "inputs", "random", "points", "order", "tolerance",
                              "seed", "description"});

  ScenarioConfig cfg;
  cfg.source = source;
  if (!root["scenario"]) fail("scenario", "missing scenario kind");
  const std::string kind = scalar(root["scenario"], "scenario");
  auto k = scenario_kind_from_string(kind);
  if (!k) fail("scenario", "unknown scenario kind '" + kind + "'");
  cfg.kind = *k;

  if (!root["chart"]) fail("chart", "missing chart");
  const YAML::Node chart = root["chart"];
  check_keys(chart, "chart", {"dim", "volume_exponent", "params"});
  if (!chart["dim"]) fail("chart.dim", "missing dimension");
  cfg.chart.dim = as_int(chart["dim"], "chart.dim");
  if (cfg.chart.dim < 1 || cfg.chart.dim > kMaxDim) {
    fail("chart.dim", "dimension " + std::to_string(cfg.chart.dim) + " outside 1.." + std::to_string(kMaxDim));
  }
  Ctx ctx;
  ctx.dim = cfg.chart.dim;
  if (chart["params"]) {
    if (!chart["params"].IsMap()) fail("chart.params", "expected a mapping of names to numbers");
    for (const auto& kv : chart["params"]) {
      const auto name = kv.first.as<std::string>();
      ctx.params.push_back(name);
      ctx.values[name] = as_double(kv.second, "chart.params." + name);
    }
  }
  cfg.chart.params = ctx.values;
  if (chart["volume_exponent"]) cfg.chart.volume_exponent = as_expr(chart["volume_exponent"], "chart.volume_exponent", ctx);

  if (root["order"]) cfg.order = as_int(root["order"], "order");
  if (cfg.order < 2 || cfg.order > 4) fail("order", "jet order must be in 2..4");
  if (root["tolerance"]) cfg.tol = as_double(root["tolerance"], "tolerance");
  if (!(cfg.tol > 0)) fail("tolerance", "must be positive");
  if (root["seed"]) cfg.seed = as_u64(root["seed"], "seed");

  if (root["fields"]) {
    if (!root["fields"].IsMap()) fail("fields", "expected a mapping of names to field definitions");
    for (const auto& kv : root["fields"]) {
      const auto name = kv.first.as<std::string>();
      cfg.fields[name] = parse_field(kv.second, "fields." + name, ctx, cfg.seed);
    }
  }

  if (root["points"]) {
    const YAML::Node p = root["points"];
    if (p.IsSequence()) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        const std::string path = "points[" + std::to_string(i) + "]";
        if (!p[i].IsSequence() || static_cast<int>(p[i].size()) != 2 * ctx.dim) {
          fail(path, "a point lists 2*dim coordinates (z1..zn, zb1..zbn)");
        }
        std::vector<Complex> pt;
        for (std::size_t j = 0; j < p[i].size(); ++j)
          pt.push_back(as_complex(p[i][j], path + "[" + std::to_string(j) + "]", ctx));
        cfg.points.list.push_back(pt);
      }
      cfg.points.count = static_cast<int>(cfg.points.list.size());
    } else {
      check_keys(p, "points", {"count", "seed", "box", "real_slice", "max_condition"});
      if (p["seed"]) cfg.seed = as_u64(p["seed"], "points.seed");
      if (p["count"]) cfg.points.count = as_int(p["count"], "points.count");
      if (p["box"]) cfg.points.box = as_double(p["box"], "points.box");
      if (p["real_slice"]) cfg.points.real_slice = as_bool(p["real_slice"], "points.real_slice");
      if (p["max_condition"]) cfg.points.max_condition = as_double(p["max_condition"], "points.max_condition");
    }
    if (cfg.points.count < 1) fail("points", "at least one point is required");
  }

  if (root["random"]) {
    const YAML::Node r = root["random"];
    check_keys(r, "random", {"sections", "functions", "degree", "elements"});
    cfg.random.enabled = true;
    if (r["sections"]) cfg.random.sections = as_int(r["sections"], "random.sections");
    if (r["functions"]) cfg.random.functions = as_int(r["functions"], "random.functions");
    if (r["degree"]) cfg.random.degree = as_int(r["degree"], "random.degree");
    if (r["elements"]) cfg.random.elements = as_int(r["elements"], "random.elements");
    if (cfg.random.degree < 0 || cfg.random.degree > 6) fail("random.degree", "must be in 0..6");
  }

  const YAML::Node inputs = root["inputs"];
  if (inputs) check_keys(inputs, "inputs", {"sections", "functions", "alpha", "M", "metric", "background"});
  auto need_random_or_inputs = [&] {
    if (!cfg.random.enabled && !inputs) fail("inputs", "scenario '" + kind + "' needs 'inputs' or 'random'");
  };
  auto read_sections = [&](std::size_t min) {
    if (!inputs["sections"] || !inputs["sections"].IsSequence()) fail("inputs.sections", "expected a list of names");
    for (std::size_t i = 0; i < inputs["sections"].size(); ++i) {
      const std::string path = "inputs.sections[" + std::to_string(i) + "]";
      const auto name = scalar(inputs["sections"][i], path);
      resolve(cfg, name, path, {"section"});
      cfg.sections.push_back(name);
    }
    if (cfg.sections.size() < min) fail("inputs.sections", "at least " + std::to_string(min) + " sections required");
  };
  auto read_functions = [&] {
    if (!inputs["functions"] || !inputs["functions"].IsSequence()) {
      fail("inputs.functions", "expected a list of expressions");
    }
    for (std::size_t i = 0; i < inputs["functions"].size(); ++i) {
      const std::string path = "inputs.functions[" + std::to_string(i) + "]";
      cfg.functions.push_back(as_expr(inputs["functions"][i], path, ctx));
      cfg.function_text.push_back(scalar(inputs["functions"][i], path));
    }
    if (cfg.functions.empty()) fail("inputs.functions", "at least one function required");
  };

  switch (cfg.kind) {
    case ScenarioKind::CourantAxioms:
    case ScenarioKind::Quasiclassical:
      need_random_or_inputs();
      if (!cfg.random.enabled) {
        read_sections(2);
        read_functions();
      }
      break;
    case ScenarioKind::VertexLeibniz:
      need_random_or_inputs();
      if (!cfg.random.enabled) read_sections(3);
      break;
    case ScenarioKind::Theorem11:
      need_random_or_inputs();
      if (!cfg.random.enabled) {
        cfg.alpha = input_name(inputs, "alpha");
        resolve(cfg, cfg.alpha, "inputs.alpha", {"section"});
        cfg.M = input_name(inputs, "M");
        resolve(cfg, cfg.M, "inputs.M", {"beltrami"});
      }
      break;
    case ScenarioKind::McResiduals:
    case ScenarioKind::Equivalence:
    case ScenarioKind::KahlerIdentity:
      cfg.metric = input_name(inputs, "metric");
      resolve(cfg, cfg.metric, "inputs.metric", kHermitianKinds);
      break;
    case ScenarioKind::EinsteinResiduals:
      if (inputs && inputs["background"]) {
        cfg.background = input_name(inputs, "background");
        resolve(cfg, cfg.background, "inputs.background", {"metric-triple"});
      } else {
        cfg.metric = input_name(inputs, "metric");
        resolve(cfg, cfg.metric, "inputs.metric", kHermitianKinds);
      }
      break;
    case ScenarioKind::ComplexChecks:
      cfg.random.enabled = true;
      break;
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string default_config(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::CourantAxioms:
      return "scenario: courant-axioms\nchart: {dim: 2}\nseed: 7\ntolerance: 1.0e-9\n"
             "random: {sections: 3, functions: 2, degree: 2}\npoints: {count: 5, box: 0.5, real_slice: false}\n";
    case ScenarioKind::VertexLeibniz:
      return "scenario: vertex-leibniz\nchart: {dim: 2}\nseed: 7\ntolerance: 1.0e-9\n"
             "random: {sections: 3, degree: 3}\npoints: {count: 5, box: 0.5, real_slice: false}\n";
    case ScenarioKind::Quasiclassical:
      return "scenario: quasiclassical\nchart: {dim: 2}\nseed: 7\ntolerance: 1.0e-12\n"
             "random: {sections: 3, functions: 2, degree: 3}\npoints: {count: 5, box: 0.5, real_slice: false}\n";
    case ScenarioKind::Theorem11:
      return "scenario: theorem11\nchart: {dim: 2}\nseed: 42\ntolerance: 1.0e-8\nrandom: {degree: 3}\n"
             "points: {count: 20, box: 0.4}\n";
    case ScenarioKind::McResiduals:
      return "scenario: mc-residuals\nchart: {dim: 2}\ntolerance: 1.0e-9\n"
             "fields:\n  g: {kind: family, family: flat-reparametrized}\ninputs: {metric: g}\npoints: {count: 20}\n";
    case ScenarioKind::EinsteinResiduals:
      return "scenario: einstein-residuals\nchart: {dim: 2}\ntolerance: 1.0e-9\n"
             "fields:\n  g: {kind: family, family: flat-reparametrized}\ninputs: {metric: g}\npoints: {count: 20}\n";
    case ScenarioKind::Equivalence:
      return "scenario: equivalence\nchart: {dim: 2}\ntolerance: 1.0e-10\n"
             "fields:\n  g: {kind: family, family: flat}\ninputs: {metric: g}\npoints: {count: 20}\n";
    case ScenarioKind::KahlerIdentity:
      return "scenario: kahler-identity\nchart: {dim: 2}\ntolerance: 1.0e-7\n"
             "fields:\n  g: {kind: family, family: fubini-study}\ninputs: {metric: g}\npoints: {count: 20}\n";
    case ScenarioKind::ComplexChecks:
      return "scenario: complex-checks\nchart: {dim: 2, volume_exponent: \"z1^2 - 3*zb2 + z2*z1\"}\nseed: 3\n"
             "tolerance: 1.0e-10\nrandom: {elements: 4, degree: 3}\npoints: {count: 10, real_slice: false}\n";
  }
  return {};
}

void apply(ScenarioConfig& cfg, const Overrides& o) {
  if (o.seed) cfg.seed = *o.seed;
  if (o.order) {
    if (*o.order < 2 || *o.order > 4) throw ConfigError("--order: jet order must be in 2..4");
    cfg.order = *o.order;
  }
  if (o.tol) {
    if (!(*o.tol > 0)) throw ConfigError("--tol: must be positive");
    cfg.tol = *o.tol;
  }
  if (o.points) {
    if (*o.points < 1) throw ConfigError("--points: at least one point is required");
    if (!cfg.points.list.empty()) throw ConfigError("--points: the config lists explicit points");
    cfg.points.count = *o.points;
  }
}

// ---------------------------------------------------------------- execution

namespace {

double condition_number(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double lo = s(s.size() - 1);
  return lo > 0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

SectionE random_section(Rng& rng, int n, int degree) {
  SectionE s = SectionE::zero(n);
  for (auto* b : {&s.v, &s.vb, &s.w, &s.wb})
    for (auto& e : *b) e = random_polynomial(rng, n, degree, 1.0);
  return s;
}

TensorField random_block(Rng& rng, int n, std::vector<IndexType> sig, int degree, double scale, bool unit) {
  std::vector<Expr> e;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Expr x = random_polynomial(rng, n, degree, scale);
      if (unit && i == j) x = x + Expr::literal(1.0);
      e.push_back(x);
    }
  return TensorField(n, std::move(sig), e);
}

BeltramiCourant random_beltrami(Rng& rng, int n) {
  return {random_block(rng, n, {IndexType::HolUp, IndexType::AntiUp}, 2, 0.3, true),
          random_block(rng, n, {IndexType::HolUp, IndexType::AntiDown}, 2, 1.0, false),
          random_block(rng, n, {IndexType::HolDown, IndexType::AntiUp}, 2, 1.0, false),
          random_block(rng, n, {IndexType::HolDown, IndexType::AntiDown}, 2, 1.0, false)};
}

GradedElement random_graded(Rng& rng, int n, int degree, int poly_degree) {
  const Expr f = random_polynomial(rng, n, poly_degree, 1.0);
  if (degree == 1 || degree == 2) {
    SectionE s = SectionE::zero(n);
    for (auto* b : {&s.v, &s.w})
      for (auto& e : *b) e = random_polynomial(rng, n, poly_degree, 1.0);
    return GradedElement::make(n, degree, f, s);
  }
  return GradedElement::make(n, degree, f);
}

// Per-point inputs drawn up front so that parallel evaluation stays deterministic.
struct PointInputs {
  std::vector<SectionE> sections;
  std::vector<Expr> functions;
  std::optional<SectionE> alpha;
  std::optional<BeltramiCourant> M;
  std::vector<GradedElement> elements;
};

struct Outcome {
  Report report;
  json extra = json::object();
  std::string error;
};

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json complex_json(Complex c) { return json::array({number(c.real()), number(c.imag())}); }

HalfSection hol_half(const SectionE& s, std::span<const Complex> p, int order, const ParamValues& params) {
  return half(section_eval(s, p, order, params), Chirality::Hol);
}

Outcome evaluate_point(const ScenarioConfig& cfg, const PointInputs& in, const std::vector<Complex>& p) {
  Outcome out;
  const double tol = cfg.tol;
  const int order = cfg.order;
  const ParamValues& params = cfg.chart.params;
  switch (cfg.kind) {
    case ScenarioKind::CourantAxioms:
      out.report = check_courant_axioms(in.sections, in.functions, {p}, tol, order, params);
      break;
    case ScenarioKind::VertexLeibniz: {
      std::vector<SectionPoly> s;
      for (const auto& sec : in.sections) s.push_back(constant_poly(hol_half(sec, p, order + 2, params)));
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
          for (std::size_t k = 0; k < s.size(); ++k) {
            if (i == j || j == k || i == k) continue;
            const auto lhs = vertex_bracket(s[i], vertex_bracket(s[j], s[k]));
            const auto rhs = vertex_bracket(vertex_bracket(s[i], s[j]), s[k]) + vertex_bracket(s[j], vertex_bracket(s[i], s[k]));
            out.report.record("leibniz", max_coeff_diff(lhs, rhs), tol);
          }
      out.report.conventions["vertex_coordinates"] = "X^i = z^i, holomorphic half";
      break;
    }
    case ScenarioKind::Quasiclassical: {
      std::vector<HalfSection> s;
      for (const auto& sec : in.sections) s.push_back(hol_half(sec, p, order, params));
      std::vector<CJet> f;
      for (const auto& e : in.functions) f.push_back(eval_jet(e, p, order, params));
      for (const auto& a : s) {
        for (const auto& b : s) {
          const HalfSection lim = quasiclassical_limit(vertex_bracket(constant_poly(a), constant_poly(b)));
          const HalfSection ref = bracket0(a, b, Chirality::Hol);
          const int o = std::min(lim.order(), ref.order());
          out.report.record("bracket_limit", max_coeff(lim.truncated(o) - ref.truncated(o)), tol);
          const CJet pl = quasiclassical_limit(vertex_pairing(constant_poly(a), constant_poly(b)));
          const CJet pr = pairing0(a, b);
          const int po = std::min(pl.order(), pr.order());
          out.report.record("pairing_limit", max_coeff(pl.truncated(po) - pr.truncated(po)), tol);
        }
        for (const auto& g : f) {
          const CJet al = quasiclassical_limit(vertex_anchor(constant_poly(a), g));
          const CJet ar = anchor0(a, g, Chirality::Hol);
          const int o = std::min(al.order(), ar.order());
          out.report.record("anchor_limit", max_coeff(al.truncated(o) - ar.truncated(o)), tol);
        }
      }
      out.report.conventions["bracket0"] = "-dorfman";
      out.report.conventions["pairing0"] = "-pairing_s";
      out.report.conventions["anchor0"] = "-v(f)";
      break;
    }
    case ScenarioKind::Theorem11:
      out.report = check_theorem11(*in.alpha, *in.M, p, tol, order, params);
      break;
    case ScenarioKind::McResiduals:
      out.report = mc_residuals(*cfg.fields.at(cfg.metric).hermitian, p, tol, std::max(order, 3));
      break;
    case ScenarioKind::EinsteinResiduals: {
      EinsteinResiduals r;
      if (!cfg.background.empty()) {
        const FieldDef& f = cfg.fields.at(cfg.background);
        r = einstein_residuals(*f.G, *f.B, *f.Phi, p, order, params);
      } else {
        const Background bg = background_from_g(*cfg.fields.at(cfg.metric).hermitian, p, order);
        r = einstein_residuals(bg.G, bg.B, bg.Phi);
      }
      out.report.record("eq1", r.eq1.cwiseAbs().maxCoeff(), tol);
      out.report.record("eq2", r.eq2.cwiseAbs().maxCoeff(), tol);
      out.report.record("eq3", std::abs(r.eq3), tol);
      out.report.record("ricci_symmetry", (r.ricci - r.ricci.transpose()).cwiseAbs().maxCoeff(), 1e-9);
      break;
    }
    case ScenarioKind::Equivalence: {
      const auto r = equivalence_report(*cfg.fields.at(cfg.metric).hermitian, {p}, tol, order);
      const PointVerdict& v = r.points.at(0);
      out.report.record("discrepancies", v.classification == Classification::Discrepancy ? 1.0 : 0.0, 0.0);
      out.report.record("phi0_pluriharmonic", r.report.residual("phi0_pluriharmonic"), 1e-9);
      out.report.conventions = r.report.conventions;
      out.extra["classification"] = to_string(v.classification);
      out.extra["mc_residual"] = number(v.mc);
      out.extra["einstein_residual"] = number(v.einstein);
      break;
    }
    case ScenarioKind::KahlerIdentity:
      out.report = ricci_kahler_identity(*cfg.fields.at(cfg.metric).hermitian, p, tol, order);
      break;
    case ScenarioKind::ComplexChecks: {
      const int o = order + 1;
      const CJet f = eval_jet(cfg.chart.volume_exponent, p, o, params);
      for (const auto& e : in.elements) {
        const GradedJets x = graded_eval(e, p, o, params);
        if (x.degree <= 1) out.report.record("q_squared", max_coeff(q_diff(q_diff(x, f), f)), tol);
        if (x.degree == 1 || x.degree == 2) {
          const GradedJets qb = q_diff(b_op(x), f);
          GradedJets bq = b_op(q_diff(x, f));
          bq.scalar = -bq.scalar;
          if (bq.section) *bq.section *= Complex(-1);
          out.report.record("qb_anticommutator", max_coeff(difference(qb, bq)), tol);
        }
        if (x.degree >= 2) out.report.record("b_squared", max_coeff(b_op(b_op(x))), tol);
      }
      out.report.conventions["div"] = "d_i A^i + A^i d_i f_Omega on vectors, zero on forms";
      break;
    }
  }
  return out;
}

// Condition-number guard for the metric-like input of a scenario.
bool admissible(const ScenarioConfig& cfg, const std::vector<Complex>& p) {
  try {
    if (!cfg.metric.empty()) {
      const MetricJets m = metric_eval(*cfg.fields.at(cfg.metric).hermitian, p, 0);
      return condition_number(m.up.value_matrix()) <= cfg.points.max_condition;
    }
    if (!cfg.M.empty()) {
      return condition_number(tensor_eval(cfg.fields.at(cfg.M).beltrami->g, p, 0, cfg.chart.params).value_matrix()) <=
             cfg.points.max_condition;
    }
    if (!cfg.background.empty()) {
      return condition_number(tensor_eval(*cfg.fields.at(cfg.background).G, p, 0, cfg.chart.params).value_matrix()) <=
             cfg.points.max_condition;
    }
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

json echo(const ScenarioConfig& cfg) {
  json e;
  e["kind"] = to_string(cfg.kind);
  e["source"] = cfg.source;
  e["dim"] = cfg.chart.dim;
  e["volume_exponent"] = to_string(cfg.chart.volume_exponent);
  json params = json::object();
  for (const auto& [k, v] : cfg.chart.params) params[k] = number(v.real());
  e["params"] = params;
  e["order"] = cfg.order;
  e["tolerance"] = cfg.tol;
  e["seed"] = cfg.seed;
  json fields = json::object();
  for (const auto& [name, f] : cfg.fields) fields[name] = f.kind;
  e["fields"] = fields;
  json inputs = json::object();
  if (!cfg.sections.empty()) inputs["sections"] = cfg.sections;
  if (!cfg.function_text.empty()) inputs["functions"] = cfg.function_text;
  for (const auto& [key, value] :
       {std::pair{"alpha", cfg.alpha}, {"M", cfg.M}, {"metric", cfg.metric}, {"background", cfg.background}})
    if (!value.empty()) inputs[key] = value;
  e["inputs"] = inputs;
  if (cfg.random.enabled) {
    e["random"] = {{"sections", cfg.random.sections},
                   {"functions", cfg.random.functions},
                   {"degree", cfg.random.degree},
                   {"elements", cfg.random.elements}};
  }
  e["points"] = cfg.points.list.empty()
                    ? json{{"mode", "sampled"},
                           {"count", cfg.points.count},
                           {"box", cfg.points.box},
                           {"real_slice", cfg.points.real_slice},
                           {"max_condition", cfg.points.max_condition}}
                    : json{{"mode", "list"}, {"count", cfg.points.count}};
  return e;
}

}  // namespace

json run_scenario(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const int n = cfg.chart.dim;
  Rng rng(cfg.seed);

  std::vector<std::vector<Complex>> pts = cfg.points.list;
  if (pts.empty()) {
    int attempts = 0;
    while (static_cast<int>(pts.size()) < cfg.points.count) {
      if (++attempts > 1000 * cfg.points.count) {
        throw ConfigError("points: could not sample admissible points (condition-number guard)");
      }
      auto p = random_point(rng, n, cfg.points.box, cfg.points.real_slice);
      if (admissible(cfg, p)) pts.push_back(std::move(p));
    }
  }

  // inputs shared across points, or drawn per point
  PointInputs shared;
  for (const auto& name : cfg.sections) shared.sections.push_back(*cfg.fields.at(name).section);
  shared.functions = cfg.functions;
  if (!cfg.alpha.empty()) shared.alpha = *cfg.fields.at(cfg.alpha).section;
  if (!cfg.M.empty()) shared.M = *cfg.fields.at(cfg.M).beltrami;
  if (cfg.random.enabled) {
    switch (cfg.kind) {
      case ScenarioKind::CourantAxioms:
      case ScenarioKind::VertexLeibniz:
      case ScenarioKind::Quasiclassical:
        for (int k = 0; k < cfg.random.sections; ++k) shared.sections.push_back(random_section(rng, n, cfg.random.degree));
        if (cfg.kind != ScenarioKind::VertexLeibniz)
          for (int k = 0; k < cfg.random.functions; ++k)
            shared.functions.push_back(random_polynomial(rng, n, cfg.random.degree, 1.0));
        break;
      default:
        break;
    }
  }
  std::vector<PointInputs> inputs(pts.size(), shared);
  if (cfg.random.enabled && cfg.kind == ScenarioKind::Theorem11) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
      while (true) {
        BeltramiCourant M = random_beltrami(rng, n);
        if (condition_number(tensor_eval(M.g, pts[k], 0).value_matrix()) > 10.0) continue;
        inputs[k].M = M;
        inputs[k].alpha = random_section(rng, n, cfg.random.degree);
        break;
      }
    }
  }
  if (cfg.kind == ScenarioKind::ComplexChecks) {
    for (auto& in : inputs)
      for (int k = 0; k < cfg.random.elements; ++k)
        for (int degree = 0; degree <= 3; ++degree)
          in.elements.push_back(random_graded(rng, n, degree, cfg.random.degree));
  }
  if (cfg.kind == ScenarioKind::CourantAxioms && shared.sections.size() < 2) {
    throw ConfigError("random.sections: courant-axioms needs at least 2 sections");
  }
  if (cfg.kind == ScenarioKind::VertexLeibniz && shared.sections.size() < 3) {
    throw ConfigError("random.sections: vertex-leibniz needs at least 3 sections");
  }

  std::vector<std::future<Outcome>> jobs;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    jobs.push_back(std::async(std::launch::async, [&cfg, &inputs, &pts, k] {
      try {
        return evaluate_point(cfg, inputs[k], pts[k]);
      } catch (const std::exception& e) {
        Outcome o;
        o.error = e.what();
        return o;
      }
    }));
  }

  Report merged;
  json points = json::array();
  int ok = 0;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    Outcome o = jobs[k].get();
    json rec;
    rec["index"] = k;
    json coords = json::array();
    for (auto c : pts[k]) coords.push_back(complex_json(c));
    rec["coordinates"] = coords;
    if (!o.error.empty()) {
      rec["status"] = "error";
      rec["error"] = o.error;
    } else {
      ++ok;
      rec["status"] = "ok";
      json res = json::object();
      for (const auto& c : o.report.checks) res[c.name] = number(c.residual);
      rec["residuals"] = res;
      for (const auto& [key, value] : o.extra.items()) rec[key] = value;
      if (cfg.kind == ScenarioKind::Equivalence) {
        // count discrepancies instead of taking their max
        Report r = o.report;
        for (auto& c : r.checks)
          if (c.name == "discrepancies") c.residual += merged.find("discrepancies") ? merged.residual("discrepancies") : 0;
        merged.merge(r);
      } else {
        merged.merge(o.report);
      }
    }
    points.push_back(rec);
  }

  json report;
  report["schema_version"] = kSchemaVersion;
  report["tool"] = "bcv";
  report["scenario"] = echo(cfg);
  json conv = json::object();
  for (const auto& [k, v] : merged.conventions) conv[k] = v;
  report["conventions"] = conv;
  json checks = json::array();
  for (const auto& c : merged.checks) {
    checks.push_back({{"name", c.name}, {"max_residual", number(c.residual)}, {"tolerance", c.tol}, {"passed", c.passed()}});
  }
  report["checks"] = checks;
  report["points"] = points;
  report["summary"] = {{"points", pts.size()}, {"evaluated", ok}, {"failed", static_cast<int>(pts.size()) - ok}};
  report["passed"] = ok > 0 && merged.passed();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report["timing"] = {{"wall_seconds", secs}};
  return report;
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

}  // namespace bcv::cli
