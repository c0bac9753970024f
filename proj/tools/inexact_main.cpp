#include <iostream>

#include "inexact/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return inexact::cli::run(args, std::cout, std::cerr);
}
