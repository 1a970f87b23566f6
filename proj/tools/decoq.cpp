// decoq: scenario runner for the entropy/decoherence simulators.
//
//   decoq run --config scenario.json [--out dir] [--seed N] [--workers N]
//   decoq verify --suite kernels|brownian|tdhf|chaos|all [--report file.json]

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "decoq/scenario.hpp"
#include "decoq/verify.hpp"
#include "json.hpp"

int main(int argc, char** argv) {
  CLI::App app{"entropy, decoherence and semiquantum-chaos simulators"};
  app.require_subcommand(1);

  std::string configPath;
  std::optional<std::string> outDir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  CLI::App* run = app.add_subcommand("run", "execute a scenario config");
  run->add_option("--config", configPath, "path to the scenario JSON")->required();
  run->add_option("--out", outDir, "output directory (overrides the config)");
  run->add_option("--seed", seed, "seed override");
  run->add_option("--workers", workers, "worker pool size for sweeps");

  std::string suite = "all";
  std::string reportPath;
  CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suites");
  verify->add_option("--suite", suite, "kernels|brownian|tdhf|chaos|all")
      ->default_val("all");
  verify->add_option("--report", reportPath, "write a machine-readable JSON report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      decoq::ScenarioConfig cfg = decoq::ScenarioConfig::fromFile(configPath);
      if (outDir) cfg.output_dir = *outDir;
      if (seed) cfg.seed = *seed;
      if (workers) cfg.workers = *workers;
      const decoq::RunRecord record = decoq::runScenario(cfg);
      if (record.exit_code != 0 && record.summary.contains("error")) {
        std::cerr << "decoq: " << record.summary["error"].get<std::string>() << "\n";
      }
      return record.exit_code;
    }

    const auto results = decoq::runAcceptance(suite, {});
    decoq::printAcceptanceReport(results, std::cout);
    int failures = 0;
    if (!reportPath.empty()) {
      nlohmann::json report = nlohmann::json::array();
      for (const auto& res : results) {
        report.push_back({{"id", res.id},
                          {"name", res.name},
                          {"suite", res.suite},
                          {"passed", res.passed},
                          {"elapsed_seconds", res.elapsed_seconds},
                          {"budget_seconds", res.budget_seconds},
                          {"details", res.details}});
      }
      std::ofstream out(reportPath, std::ios::binary);
      out << report.dump(2) << "\n";
    }
    for (const auto& res : results) failures += res.passed ? 0 : 1;
    return failures == 0 ? 0 : 1;
  } catch (const decoq::InvalidInput& err) {
    std::cerr << "decoq: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "decoq: " << err.what() << "\n";
    return 3;
  }
}
