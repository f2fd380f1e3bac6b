#ifndef BANACHLAB_CLI_HPP
#define BANACHLAB_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace banachlab::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kConvergence = 3,
  kSizeCap = 4,
  kIo = 5,
};

// args excludes the program name. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace banachlab::cli

#endif  // BANACHLAB_CLI_HPP
