#include <iostream>

#include "simcheck/cli.hpp"

int main(int argc, char** argv) {
  return simcheck::cli::run(argc, argv, std::cout, std::cerr);
}
