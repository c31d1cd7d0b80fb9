#include <iostream>
#include <string>
#include <vector>

#include "sparse_sketch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sparse_sketch::run_cli(args, std::cout, std::cerr);
}
