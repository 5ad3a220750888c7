#include <iostream>
#include <string>
#include <vector>

#include "phaseshor/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return phaseshor::cli::run(args, std::cout, std::cerr);
}
