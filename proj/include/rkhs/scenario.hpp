#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "rkhs/io.hpp"

namespace rkhs {

struct RunOptions {
  std::optional<double> tol_psd;
  std::optional<double> tol_rank;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  std::string format = "json";  // csv only honored for rootfn sweeps
};

// One experiment: a named config with a task tag. Everything else is
// task-specific and kept as raw JSON, validated at run time.
struct Scenario {
  std::string name;
  std::string task;
  io::json config;

  static Scenario from_json(const io::json& j);
  static Scenario load(const std::filesystem::path& file);
};

struct RunOutcome {
  io::json report;
  bool passed = false;
};

// Deterministic given (config, seed): runs the task and returns the report.
// When options.out_dir is set, writes <name>.report.json (and <name>.csv for
// rootfn sweeps with csv format).
RunOutcome run(const Scenario& scenario, const RunOptions& options = {});

struct SuiteSummary {
  int total = 0;
  int passed = 0;
  io::json table;  // per-scenario name/pass/detail
};

SuiteSummary run_suite(const std::filesystem::path& dir,
                       const RunOptions& options = {});

}  // namespace rkhs
