#include <cstdlib>
#include <iostream>

#include "ctlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env;
  if (const char* v = std::getenv("CT_LAB_JET_CAP")) env = v;
  const auto report = ctlab::cli::run(args, env);
  std::cout << report.out;
  std::cerr << report.err;
  return report.exit_code;
}
