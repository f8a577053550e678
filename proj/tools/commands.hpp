#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fendec::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsage = 2,
  kSelfCheckFailed = 3,
};

// Entry point shared by main() and the CLI tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline constexpr const char* kCsvHeader =
    "instance,algorithm,scens,mips_solved,fenchel_cuts,lb,ub,gap_pct,iterations,wall_s,seed";

}  // namespace fendec::cli
