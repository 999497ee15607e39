#include <iostream>

#include "heaps/cli.hpp"

int main(int argc, char** argv) {
  return heaps::cli::run(argc, argv, std::cout, std::cerr);
}
