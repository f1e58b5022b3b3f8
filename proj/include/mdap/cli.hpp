#pragma once

#include <string>
#include <vector>

#include "mdap/report.hpp"

namespace mdap {

struct CliOutcome {
  int exit_code = 0;
  std::string out;  // rendered report (or schema)
  std::string err;  // error record as JSON
};

// args excludes the program name
CliOutcome run_cli(const std::vector<std::string>& args);

}  // namespace mdap
