#include <iostream>
#include <string>
#include <vector>

#include "eda/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return eda::cli::parse_and_dispatch(args, std::cout, std::cerr);
}
