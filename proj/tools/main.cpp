#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const surd::cli::CliRun r = surd::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
