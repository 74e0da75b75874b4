// Command-line driver: one run, or a sweep over consecutive seeds.
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "becpsim/harness/config.hpp"
#include "becpsim/harness/report.hpp"
#include "becpsim/harness/sweep.hpp"

using namespace becpsim;

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator for gossip-based and baseline consensus protocols"};

  // Tunables are collected as text and applied through the same path as config files,
  // so a flag always overrides the file value.
  static const char* const kKeys[] = {"protocol", "nodes",  "duration", "seed",   "cycle",       "d1",
                                      "t-block",  "p-block", "epsilon1", "psi",    "n-cache",     "k",
                                      "alpha",    "beta1",   "beta2",    "timeout-min", "timeout-max",
                                      "latency-min", "latency-max"};
  std::map<std::string, std::string> flags;
  for (const char* key : kKeys) app.add_option(std::string("--") + key, flags[key]);

  std::string config_file;
  std::string out_path;
  std::string format = "csv";
  std::string seeds = "1";
  app.add_option("--config", config_file, "key=value settings file");
  app.add_option("--seeds", seeds, "seed count starting at --seed, or an inclusive range a-b");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  harness::SimConfig config;
  std::vector<std::string> set_fields;
  std::pair<std::uint64_t, std::uint64_t> seed_span;
  try {
    if (!config_file.empty()) {
      auto applied = harness::apply_settings(config, harness::read_settings_file(config_file));
      set_fields.insert(set_fields.end(), applied.begin(), applied.end());
    }
    std::map<std::string, std::string> given;
    for (const auto& [key, value] : flags) {
      if (app.count("--" + key) > 0) given[key] = value;
    }
    auto applied = harness::apply_settings(config, given);
    set_fields.insert(set_fields.end(), applied.begin(), applied.end());
    config.validate();
    seed_span = harness::parse_seeds(seeds, config.seed);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& key : config.irrelevant(set_fields)) {
    std::cerr << "warning: '" << key << "' is not used by " << harness::to_string(config.protocol) << "\n";
  }

  std::vector<harness::ExperimentReport> reports;
  try {
    reports = harness::run_sweep(harness::seed_range(config, seed_span.first, seed_span.second));
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 1;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot write " << out_path << "\n";
      return 1;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  if (format == "json") {
    harness::write_json(out, reports);
  } else {
    harness::write_csv(out, reports);
  }

  for (const auto& r : reports) {
    if (r.safety_violation_count > 0) {
      std::cerr << "seed " << r.seed << ": " << r.safety_violation_count << " safety violations, first: "
                << r.safety_violations.front() << "\n";
    }
  }
  return 0;
}
