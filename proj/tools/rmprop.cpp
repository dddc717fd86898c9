#include <iostream>

#include "rmprop/cli.hpp"

int main(int argc, char** argv) {
  return rmprop::cli::run(argc, argv, std::cout, std::cerr);
}
