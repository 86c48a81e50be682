#include <iostream>
#include <string>
#include <vector>

#include "polyassign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return polyassign::run_cli(args, std::cout, std::cerr);
}
