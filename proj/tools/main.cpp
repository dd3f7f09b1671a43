#include <iostream>

#include "sfmio/cli.hpp"

int main(int argc, char** argv) {
  return sfmio::cli::run(argc, argv, std::cout, std::cerr);
}
