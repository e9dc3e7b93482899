#include <string>
#include <vector>

#include "dfp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dfp::cli::dispatch(args);
}
