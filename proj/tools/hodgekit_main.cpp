// Command-line entry point; all logic lives in run_cli so tests can drive it.
#include <iostream>
#include <string>
#include <vector>

#include "hodgekit/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return hodgekit::run_cli(args, std::cout, std::cerr);
}
