#include <iostream>

#include "mphase/cli.hpp"

int main(int argc, char** argv) {
  return mphase::cli::run(argc, argv, std::cout, std::cerr);
}
