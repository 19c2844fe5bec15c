#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "spender/harness.hpp"

namespace h = spender::harness;

namespace {

h::Scenario resolve(const std::string& name_or_path) {
  for (const auto& name : h::list_builtin()) {
    if (name == name_or_path) return h::builtin_scenario(name);
  }
  return h::load_scenario(name_or_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run scripted SPENDER scenarios and check exact payoffs", "spender-scenario"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print built-in scenario names");
  auto* show = app.add_subcommand("show", "Print a built-in scenario file");
  std::string show_name;
  show->add_option("name", show_name)->required();

  auto* run = app.add_subcommand("run", "Run scenarios; exit 1 if any fails");
  std::vector<std::string> targets;
  std::string report_path;
  bool all = false;
  run->add_option("scenario", targets, "Built-in name or scenario file");
  run->add_flag("--all", all, "Run every built-in scenario");
  run->add_option("--report", report_path, "Write a structured JSON report here");
  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& name : h::list_builtin()) std::cout << name << '\n';
      return 0;
    }
    if (*show) {
      std::cout << h::builtin_source(show_name);
      return 0;
    }
    if (all) targets = h::list_builtin();
    if (targets.empty()) {
      std::cerr << "nothing to run: name a scenario or pass --all\n";
      return 2;
    }
    nlohmann::json reports = nlohmann::json::array();
    bool ok = true;
    for (const auto& t : targets) {
      h::PayoffReport report = h::run_scenario(resolve(t));
      std::cout << h::render_text(report);
      reports.push_back(h::to_json(report));
      ok = ok && report.passed();
    }
    if (!report_path.empty()) {
      std::ofstream out(report_path);
      out << reports.dump(2) << '\n';
      if (!out) {
        std::cerr << "cannot write " << report_path << '\n';
        return 2;
      }
    }
    return ok ? 0 : 1;
  } catch (const spender::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
