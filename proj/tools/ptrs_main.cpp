#include <iostream>

#include "ptrs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ptrs::run_cli(args, std::cout, std::cerr);
}
