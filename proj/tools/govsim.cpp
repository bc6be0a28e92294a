#include <iostream>

#include "govsim/cli.hpp"

int main(int argc, char** argv) {
  std::cout.sync_with_stdio(false);
  return govsim::cli::run_cli(argc, argv, std::cout, std::cerr);
}
