#include <iostream>
#include <string>
#include <vector>

#include "icalc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return icalc::run_cli(args, std::cout, std::cerr);
}
