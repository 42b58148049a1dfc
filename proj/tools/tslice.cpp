#include <iostream>
#include <string>
#include <vector>

#include "tslice/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tslice::run_cli(args, std::cout, std::cerr);
}
