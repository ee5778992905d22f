#include <iostream>

#include "aasynth/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aasynth::cli_main(args, std::cout, std::cerr);
}
