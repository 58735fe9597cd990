#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace hbtop::cli {

inline constexpr std::size_t kMaxCount = 100000;
inline constexpr int kMaxTableGenus = 100;
inline constexpr int kMaxTableMarks = 100;

struct RunConfig {
  std::string command;
  /// Input files: complexes, Hasse diagrams or marked complexes.
  std::vector<std::string> inputs;
  /// strat-check: poset and face-label files paired with a complex input.
  std::string poset_input;
  std::string labels_input;
  std::string lemma;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  int gmax = 10;
  int bmax = 10;
  int pmax = 10;
  int genus = 4;
  int kmax = 6;
  int max_vertices = 5;
  /// Empty means standard output.
  std::string output;
  /// 0 means HBTOP_WORKERS or, failing that, the hardware concurrency.
  unsigned workers = 0;
};

const std::vector<std::string>& command_names();

struct RunResult {
  /// 0: nothing violated; 1: some verdict violated; 2: error.
  int exit_code = 0;
  nlohmann::json report;
};

/// Dispatches on `config.command`. Input and bound errors are reported in
/// the JSON with status "error" rather than thrown.
RunResult run(const RunConfig& config);

/// The report as written to disk: two-space indented JSON and a newline.
std::string render(const nlohmann::json& report);

/// Runs and writes the report to `config.output` or standard output.
int run_and_write(const RunConfig& config);

/// Problems with a report's top-level shape; empty when it conforms.
std::vector<std::string> validate_report_shape(const nlohmann::json& report);

/// Worker count from HBTOP_WORKERS, else the hardware concurrency.
unsigned default_workers();

}  // namespace hbtop::cli
