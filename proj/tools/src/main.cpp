#include <iostream>
#include <string>
#include <vector>

#include "fusionmod_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fusionmod::cli::run_command(args, std::cout, std::cerr);
}
