#ifndef DFP_CLI_HPP
#define DFP_CLI_HPP

#include <string>
#include <vector>

namespace dfp::cli {

// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

// Runs one subcommand (extract / rank / train / evaluate / report).
// args excludes the program name.
int dispatch(const std::vector<std::string>& args);

}  // namespace dfp::cli

#endif
