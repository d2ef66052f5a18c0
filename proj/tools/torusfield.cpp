// torusfield command line: run experiments from config files, list shells.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "torusfield/harness.hpp"

namespace tf = torusfield;

namespace {

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned threads = 1;
  std::string timestamp;
};

int run(const std::string& experiment, const RunOptions& opt) {
  tf::ExperimentConfig config = tf::load_config(opt.config);
  if (!config.experiment.empty() && config.experiment != experiment)
    throw tf::ConfigError("config names experiment '" + config.experiment + "' but '" + experiment + "' was requested");
  config.experiment = experiment;
  if (opt.seed) config.master_seed = *opt.seed;

  const auto records = tf::run_experiment(config, {opt.threads, opt.timestamp});
  const std::string out = opt.out.empty() ? config.output : opt.out;
  if (out.empty()) {
    tf::write_json_lines(std::cout, records);
  } else {
    tf::write_json_lines(out, records);
    std::filesystem::path table = config.table;
    if (table.empty()) table = std::filesystem::path(out).replace_extension(".csv");
    tf::write_csv(table, records);
    std::cerr << records.size() << " records -> " << out << " (table " << table.string() << ")\n";
  }
  return 0;
}

int shell(std::int64_t energy) {
  const auto s = tf::enumerate_shell(energy);
  std::cout << "E = " << energy << "\nN_E = " << s.size() << "\n";
  for (const auto& p : s.points()) std::cout << p.x << " " << p.y << " " << p.z << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic random waves on the 3-torus: nodal intersection experiments"};
  app.set_version_flag("--version", tf::version());
  app.require_subcommand(1);

  RunOptions opt;
  std::string chosen;
  for (const auto& name : tf::experiment_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", opt.config, "key = value config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "override master_seed");
    sub->add_option("--out", opt.out, "JSON lines output (a .csv table is written next to it)");
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--timestamp", opt.timestamp, "fixed record timestamp, for bit-identical reruns");
    sub->callback([&chosen, name] { chosen = name; });
  }

  std::int64_t energy = 0;
  auto* sh = app.add_subcommand("shell", "print N_E and the lattice points of |x|^2 = E");
  sh->add_option("--energy", energy, "E")->required()->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  try {
    if (sh->parsed()) return shell(energy);
    return run(chosen, opt);
  } catch (const tf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
