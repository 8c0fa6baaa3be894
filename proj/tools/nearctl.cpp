#include <iostream>

#include "nearctl/cli.hpp"

int main(int argc, char** argv) {
  return nearctl::run_cli(argc, argv, std::cout, std::cerr);
}
