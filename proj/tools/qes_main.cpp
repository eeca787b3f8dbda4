#include <iostream>
#include <string>
#include <vector>

#include "qes/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qes::run_cli(args, std::cout, std::cerr);
}
