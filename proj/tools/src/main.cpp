#include <unistd.h>

#include <iostream>

#include "valconv_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return valconv::cli::run(args, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}
