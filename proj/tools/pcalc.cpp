#include <iostream>

#include "pcalc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pcalc::dispatch(args, std::cout, std::cerr);
}
