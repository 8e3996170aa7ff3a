#include <iostream>
#include <string>
#include <vector>

#include "netpoint/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return netpoint::run_cli(args, std::cout, std::cerr);
}
