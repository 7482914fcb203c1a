#include <iostream>
#include <vector>

#include "limcolim/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return limcolim::cli::run(args, std::cout, std::cerr);
}
