#include <iostream>

#include "rbfreg/cli.hpp"

int main(int argc, char** argv) {
  return rbfreg::cli::run(argc, argv, std::cout, std::cerr);
}
