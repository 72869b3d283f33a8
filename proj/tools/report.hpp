#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace snfc::cli {

/// One command-line invocation.
struct JobSpec {
  std::string command;  ///< bound | construct | verify | oracle | report
  std::string network;
  std::string target_matrix;
  std::string security_matrix;
  std::string target_table;
  std::string security_table;
  std::string code;
  std::optional<std::string> field;
  int level = 0;
  bool level_given = false;
  std::optional<int> rate;
  std::uint64_t seed = 1;
  int limit_edges = 18;
  int limit_nodes = 20;
  std::optional<std::uint32_t> edge_alphabet;
  int retry_budget = 64;
  int search_budget = 4096;
  std::uint64_t mi_budget = std::uint64_t{1} << 20;
  std::string out;
};

struct JobResult {
  int exit_code = 0;
  std::string json;  ///< pretty-printed with sorted keys, newline terminated
};

/// Exit codes: 0 success, 2 parse or usage, 3 InstanceTooLarge,
/// 4 FieldTooSmall, 5 SearchExhausted, 1 anything else.
JobResult run(const JobSpec& job);
JobResult usage_error(const std::string& message);

}  // namespace snfc::cli
