#include <iostream>
#include <string>
#include <vector>

#include "banachlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return banachlab::cli::run(args, std::cout, std::cerr);
}
