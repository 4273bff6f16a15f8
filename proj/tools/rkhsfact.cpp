// Scenario-driven experiment runner for the kernel factorization library.
//
// Subcommands: kernel-check | synthesize | leech | pipeline | rootfn |
// counterexample | suite. Each task subcommand takes --config PATH; suite
// takes a directory of scenario files. Exit code 0 iff all declared checks
// pass.

#include <CLI11.hpp>
#include <iostream>

#include "rkhs/errors.hpp"
#include "rkhs/scenario.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  double tol_psd = -1.0;
  double tol_rank = -1.0;
  std::int64_t seed = -1;
  std::string format = "json";
};

rkhs::RunOptions to_options(const CommonFlags& flags) {
  rkhs::RunOptions options;
  if (flags.tol_psd >= 0.0) options.tol_psd = flags.tol_psd;
  if (flags.tol_rank >= 0.0) options.tol_rank = flags.tol_rank;
  if (flags.seed >= 0) options.seed = static_cast<std::uint64_t>(flags.seed);
  if (!flags.out.empty()) options.out_dir = flags.out;
  options.format = flags.format;
  return options;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool config_is_dir) {
  if (config_is_dir)
    cmd->add_option("--config", flags.config, "directory of scenario files")
        ->required();
  else
    cmd->add_option("--config", flags.config, "scenario config file")->required();
  cmd->add_option("--out", flags.out, "output directory for reports");
  cmd->add_option("--tol-psd", flags.tol_psd, "override PSD tolerance");
  cmd->add_option("--tol-rank", flags.tol_rank, "override rank tolerance");
  cmd->add_option("--seed", flags.seed, "override the sampling seed");
  cmd->add_option("--format", flags.format, "json | csv (csv only for sweeps)")
      ->check(CLI::IsMember({"json", "csv"}));
}

int run_task(const CommonFlags& flags, const std::string& expected_task) {
  const rkhs::Scenario scenario = rkhs::Scenario::load(flags.config);
  if (scenario.task != expected_task)
    throw rkhs::ConfigError("scenario task \"" + scenario.task +
                            "\" does not match subcommand \"" + expected_task +
                            "\"");
  const rkhs::RunOutcome outcome = rkhs::run(scenario, to_options(flags));
  std::cout << outcome.report.dump(2) << "\n";
  return outcome.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beurling factorization toolkit for sampled kernel Hilbert spaces"};
  app.require_subcommand(1);

  const std::vector<std::string> tasks = {"kernel-check", "synthesize", "leech",
                                          "pipeline",     "rootfn",     "counterexample"};
  std::map<std::string, CommonFlags> flags;
  for (const auto& task : tasks)
    add_common_flags(app.add_subcommand(task, "run a " + task + " scenario"),
                     flags[task], false);
  CommonFlags suite_flags;
  add_common_flags(app.add_subcommand("suite", "run every scenario in a directory"),
                   suite_flags, true);

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& task : tasks)
      if (app.get_subcommand(task)->parsed()) return run_task(flags[task], task);
    if (app.get_subcommand("suite")->parsed()) {
      const rkhs::SuiteSummary summary =
          rkhs::run_suite(suite_flags.config, to_options(suite_flags));
      for (const auto& row : summary.table)
        std::cout << (row["passed"].get<bool>() ? "PASS " : "FAIL ")
                  << row.value("name", row["file"].get<std::string>())
                  << (row.contains("error")
                          ? "  (" + row["error"].get<std::string>() + ")"
                          : "")
                  << "\n";
      std::cout << summary.passed << "/" << summary.total << " scenarios passed\n";
      return summary.passed == summary.total ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
