#include <iostream>

#include "isosym/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return isosym::cli::run(args, std::cout, std::cerr);
}
