#include <iostream>
#include <string>
#include <vector>

#include "logcoef/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return logcoef::cli::main_entry(args, std::cout, std::cerr);
}
