#include "antimap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return antimap::cli::main_entry(argc, argv, std::cout, std::cerr);
}
