#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kerrcat::cli {

enum exit_code : int {
  kOk = 0,
  kValidation = 2,
  kIo = 3,
  kNumerical = 4,
};

/// Runs one kerrcat command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kerrcat::cli
