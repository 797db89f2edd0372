#include <iostream>
#include <string>
#include <vector>

#include "l1p/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return l1p::cli::dispatch(args, std::cout, std::cerr);
}
