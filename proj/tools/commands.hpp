#pragma once

#include <optional>
#include <string>

#include "qforge/json_io.hpp"

namespace qf::cli {

struct Invocation {
  std::string command;
  Json config;
  std::optional<u64> seed_override;
  std::string out_path;  // empty = stdout
  unsigned threads = 1;
  int verbosity = 0;  // from QF_LOG
};

// Runs one subcommand; returns the process exit code (0 ok, 1 domain error,
// 2 config error). Output is a RunRecord JSON document, or JSON lines for
// the sweep commands.
int run_command(const Invocation& inv);

}  // namespace qf::cli
