#ifndef RAM_CLI_HPP_
#define RAM_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace ram::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kInputError = 2,
  kResourceCap = 3,
  kInternalError = 4,
};

// args excludes the program name. Everything is written to `out` except
// diagnostics, which go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ram::cli

#endif  // RAM_CLI_HPP_
