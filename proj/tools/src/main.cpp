#include <iostream>

#include "decdiag/cli/app.hpp"

int main(int argc, char** argv) {
  return decdiag::cli::run_cli(argc, argv, std::cout, std::cerr);
}
