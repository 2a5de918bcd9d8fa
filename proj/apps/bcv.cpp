#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bcv/scenario.hpp"

using namespace bcv::cli;

namespace {

int execute(ScenarioConfig cfg, const Overrides& o, const std::string& report_path) {
  apply(cfg, o);
  const auto report = run_scenario(cfg);
  const std::string text = dump(report);
  if (report_path.empty() || report_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(report_path);
    if (!out) throw ConfigError(report_path + ": cannot write report");
    out << text;
  }
  for (const auto& c : report["checks"]) {
    std::cerr << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << "  max "
              << c["max_residual"].dump() << "  tol " << c["tolerance"].get<double>() << "\n";
  }
  const auto& s = report["summary"];
  std::cerr << to_string(cfg.kind) << ": " << s["evaluated"] << "/" << s["points"] << " points evaluated, "
            << (report["passed"].get<bool>() ? "passed" : "failed") << "\n";
  return report["passed"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bcv: verification harnesses for Beltrami-Courant sigma-model backgrounds"};
  app.require_subcommand(1);

  Overrides o;
  std::string report_path;
  auto add_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--order", o.order, "jet order (2..4)");
    sub->add_option("--tol", o.tol, "tolerance for every check");
    sub->add_option("--report", report_path, "write the JSON report here (default stdout)");
    sub->add_option("--points", o.points, "number of sampled points");
  };

  std::string run_path;
  auto* run = app.add_subcommand("run", "run the scenario described by a config file");
  run->add_option("config", run_path, "YAML config")->required();
  add_flags(run);

  std::map<CLI::App*, std::pair<ScenarioKind, std::string>> subs;
  for (auto kind : all_scenario_kinds()) {
    auto* sub = app.add_subcommand(to_string(kind), "run the " + to_string(kind) + " harness");
    auto& entry = subs[sub];
    entry.first = kind;
    sub->add_option("config", entry.second, "YAML config (default: built-in)");
    add_flags(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return execute(load_config(run_path), o, report_path);
    for (auto& [sub, entry] : subs) {
      if (!sub->parsed()) continue;
      ScenarioConfig cfg = entry.second.empty()
                               ? parse_config(default_config(entry.first), "<built-in " + to_string(entry.first) + ">")
                               : load_config(entry.second);
      if (cfg.kind != entry.first) {
        throw ConfigError(entry.second + ": config runs scenario '" + to_string(cfg.kind) + "', not '" +
                          to_string(entry.first) + "'");
      }
      return execute(std::move(cfg), o, report_path);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
